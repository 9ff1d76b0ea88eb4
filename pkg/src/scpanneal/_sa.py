"""Numba kernel for single-bit-flip Metropolis annealing.

The polynomial is flattened to CSR-style arrays: term t owns the variable
slice tvars[tptr[t]:tptr[t+1]], and variable v appears in the term slice
vterms[vptr[v]:vptr[v+1]]. A per-term count of zero-valued variables makes
each flip delta O(terms touching the variable): a term contributes its
coefficient iff all its other variables are 1.

Reads are independent restarts; each seeds the thread-local generator from
its own entry of read_seeds, so the schedule over threads cannot change the
output and the parallel loop is bit-identical to a sequential one.

Energies accumulated here drift by rounding over millions of flips; callers
recompute exact energies from the returned states.
"""

import numpy as np
import numba
from numba import njit, prange

# fork-safe and available everywhere; reads are coarse enough that the
# scheduling layer does not matter
numba.config.THREADING_LAYER = "workqueue"

# exp(-37) is below the smallest positive value of random(), so for
# delta > 37 * temp the acceptance test reduces to drawing u == 0.0 exactly
_EXP_CUTOFF = 37.0


@njit(cache=True, parallel=True)
def anneal_reads(num_vars, coeffs, tptr, tvars, vptr, vterms, temps,
                 read_seeds, best_states):
    num_terms = coeffs.shape[0]
    num_sweeps = temps.shape[0]

    for r in prange(read_seeds.shape[0]):
        zeros = np.empty(num_terms, np.int32)
        x = np.empty(num_vars, np.uint8)
        np.random.seed(read_seeds[r])
        for v in range(num_vars):
            x[v] = 1 if np.random.random() < 0.5 else 0

        energy = 0.0
        for t in range(num_terms):
            z = 0
            for p in range(tptr[t], tptr[t + 1]):
                if x[tvars[p]] == 0:
                    z += 1
            zeros[t] = z
            if z == 0:
                energy += coeffs[t]
        best_energy = energy
        for v in range(num_vars):
            best_states[r, v] = x[v]

        for s in range(num_sweeps):
            temp = temps[s]
            for _ in range(num_vars):
                v = np.random.randint(0, num_vars)
                old = x[v]
                need = 1 - np.int32(old)  # zero count at which others are all 1
                delta = 0.0
                if old == 0:
                    for p in range(vptr[v], vptr[v + 1]):
                        if zeros[vterms[p]] == need:
                            delta += coeffs[vterms[p]]
                else:
                    for p in range(vptr[v], vptr[v + 1]):
                        if zeros[vterms[p]] == need:
                            delta -= coeffs[vterms[p]]

                if delta <= 0.0:
                    accept = True
                elif delta > _EXP_CUTOFF * temp:
                    accept = np.random.random() == 0.0
                else:
                    accept = np.random.random() < np.exp(-delta / temp)

                if accept:
                    if old == 0:
                        x[v] = 1
                        for p in range(vptr[v], vptr[v + 1]):
                            zeros[vterms[p]] -= 1
                    else:
                        x[v] = 0
                        for p in range(vptr[v], vptr[v + 1]):
                            zeros[vterms[p]] += 1
                    energy += delta
                    if energy < best_energy:
                        best_energy = energy
                        for w in range(num_vars):
                            best_states[r, w] = x[w]
