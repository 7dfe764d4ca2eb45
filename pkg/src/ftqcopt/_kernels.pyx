# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled statevector kernels. Same contract as ``_kernels_py``."""

cimport cython


def apply_controlled_1q(double complex[:, ::1] state, int n, controls, int target, m):
    cdef Py_ssize_t dim = state.shape[0]
    cdef Py_ssize_t batch = state.shape[1]
    cdef Py_ssize_t tbit = 1 << (n - 1 - target)
    cdef Py_ssize_t mask = tbit
    cdef Py_ssize_t want = 0
    cdef Py_ssize_t i, j, b
    cdef double complex m00 = m[0, 0], m01 = m[0, 1], m10 = m[1, 0], m11 = m[1, 1]
    cdef double complex a0, a1
    cdef bint is_x = m00 == 0 and m11 == 0 and m01 == 1 and m10 == 1
    for c in controls:
        mask |= 1 << (n - 1 - <int>c)
        want |= 1 << (n - 1 - <int>c)
    with nogil:
        for i in range(dim):
            if (i & mask) != want:
                continue
            j = i | tbit
            if is_x:
                for b in range(batch):
                    a0 = state[i, b]
                    state[i, b] = state[j, b]
                    state[j, b] = a0
            else:
                for b in range(batch):
                    a0 = state[i, b]
                    a1 = state[j, b]
                    state[i, b] = m00 * a0 + m01 * a1
                    state[j, b] = m10 * a0 + m11 * a1
