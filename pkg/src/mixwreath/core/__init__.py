"""Exact fields and sparse linear algebra shared by every other module."""
from .field import GF, QQ, Field
from .kernels import BACKEND
from .linalg import (SparseMatrix, Subspace, kernel, left_kernel, member, rank, rref, solve,
                     vec_add, vec_iadd, vec_scale)

__all__ = ["Field", "QQ", "GF", "BACKEND", "SparseMatrix", "Subspace", "rref", "rank", "kernel",
           "left_kernel", "member", "solve", "vec_add", "vec_iadd", "vec_scale"]
