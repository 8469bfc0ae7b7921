"""Finite modules over F_p[lambda]/(lambda^N) carrying compatible pairings.

A module is described by its lambda-partition: the lengths e_1 >= e_2 >= ...
of its cyclic factors F_p[lambda]/(lambda^e).  Pairings are Gram matrices G
with <x, y> = x^T G y and the compatibility rule <lambda x, y> = -<x, lambda y>,
i.e. G L = -L^T G.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf
from .errors import CapExceeded, FermatShaError
from .modarith import is_prime

MODULE_DIM_CAP = 32
PART_CAP_LIMIT = 12
DIM_CAP_LIMIT = 40
ADJOINT_SIGN = -1


def as_partition(parts) -> tuple:
    parts = tuple(sorted((int(e) for e in parts), reverse=True))
    if any(e < 1 for e in parts):
        raise ValueError(f"parts must be positive: {parts}")
    return parts


def torsion_dim(parts, m: int) -> int:
    """dim_Fp M[lambda^m]."""
    return sum(min(e, m) for e in parts)


def quotient_dim(parts, m: int, n: int) -> int:
    """dim_Fp of M[lambda^m] / lambda^n M[lambda^(n+m)]."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return sum(min(e, m) - max(0, min(e, n + m) - n) for e in parts)


def clipped_shape(parts, k: int) -> tuple:
    """Partition of M[lambda^k]."""
    return as_partition(min(e, k) for e in parts)


def _check_field(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def realize_module(parts, p: int) -> np.ndarray:
    """Matrix of lambda on F_p^(sum e): one shift block per cyclic factor."""
    parts = as_partition(parts)
    _check_field(p)
    n = sum(parts)
    if n > MODULE_DIM_CAP:
        raise CapExceeded(f"module dimension {n} exceeds {MODULE_DIM_CAP}")
    L = np.zeros((n, n), dtype=np.int64)
    offset = 0
    for e in parts:
        for j in range(e - 1):
            L[offset + j + 1, offset + j] = 1
        offset += e
    return L


@dataclass(frozen=True, eq=False)
class PairedLambdaModule:
    p: int
    lambda_op: np.ndarray
    gram: np.ndarray
    adjoint_sign: int = ADJOINT_SIGN

    def __post_init__(self):
        p, L, G = self.p, self.lambda_op, self.gram
        n = L.shape[0]
        if L.shape != (n, n) or G.shape != (n, n):
            raise ValueError("lambda_op and gram must be square of equal size")
        if gf.matpow(L, n, p).any():
            raise ValueError("lambda_op is not nilpotent")
        if gf.rank(G, p) != n:
            raise ValueError("gram matrix is degenerate")
        if not self.is_compatible(G):
            raise ValueError("gram is not lambda-compatible")

    @property
    def dimension(self) -> int:
        return self.lambda_op.shape[0]

    def is_compatible(self, G) -> bool:
        p, L = self.p, self.lambda_op
        return np.array_equal(gf.matmul(G, L, p), self.adjoint_sign * gf.matmul(L.T, G, p) % p)

    def with_gram(self, G) -> "PairedLambdaModule":
        return PairedLambdaModule(self.p, self.lambda_op, gf.asmat(G, self.p), self.adjoint_sign)


def hyperbolic_pairing(parts, p: int) -> PairedLambdaModule:
    """M + M^dual with lambda acting as -A^T on the dual and the form [[0, I], [-I, 0]]."""
    parts = as_partition(parts)
    A = realize_module(parts, p)
    n = A.shape[0]
    if 2 * n > MODULE_DIM_CAP:
        raise CapExceeded(f"paired module dimension {2 * n} exceeds {MODULE_DIM_CAP}")
    Z = np.zeros((n, n), dtype=np.int64)
    L = np.block([[A, Z], [Z, (-A.T) % p]])
    I = np.eye(n, dtype=np.int64)
    G = np.block([[Z, I], [(-I) % p, Z]])
    return PairedLambdaModule(p, L, G)


@lru_cache(maxsize=256)
def _linear_solution_basis(key: tuple, kind: str) -> np.ndarray:
    # kind "centralizer": X with L X = X L; kind "compatible": G with G L = -L^T G
    p, n, raw = key
    L = np.frombuffer(raw, dtype=np.int64).reshape(n, n)
    I = np.eye(n, dtype=np.int64)
    # row-major vec: vec(A X B) = kron(A, B^T) vec(X)
    if kind == "centralizer":
        op = np.kron(L, I) - np.kron(I, L.T)
    else:
        op = np.kron(I, L.T) + np.kron(L.T, I)
    return gf.nullspace(op % p, p)


def _key(mod: PairedLambdaModule) -> tuple:
    L = np.ascontiguousarray(mod.lambda_op, dtype=np.int64)
    return (int(mod.p), L.shape[0], L.tobytes())


def _random_from_basis(basis, n, p, rng, tries=200) -> np.ndarray:
    for _ in range(tries):
        coeffs = rng.integers(0, p, size=basis.shape[1], dtype=np.int64)
        X = gf.matmul(basis, coeffs.reshape(-1, 1), p).reshape(n, n)
        if gf.rank(X, p) == n:
            return X
    raise FermatShaError("failed to sample an invertible element")


def random_automorphism(mod: PairedLambdaModule, rng) -> np.ndarray:
    """Uniform-ish invertible matrix commuting with lambda."""
    basis = _linear_solution_basis(_key(mod), "centralizer")
    return _random_from_basis(basis, mod.dimension, mod.p, rng)


def random_congruent_pairing(mod: PairedLambdaModule, rng) -> PairedLambdaModule:
    """P^T G P for a random lambda-automorphism P: an isometric copy of mod."""
    P = random_automorphism(mod, rng)
    p = mod.p
    return mod.with_gram(gf.matmul(gf.matmul(P.T, mod.gram, p), P, p))


def random_compatible_pairing(mod: PairedLambdaModule, rng) -> PairedLambdaModule:
    """A random nondegenerate G with G L = -L^T G, not tied to mod.gram."""
    basis = _linear_solution_basis(_key(mod), "compatible")
    return mod.with_gram(_random_from_basis(basis, mod.dimension, mod.p, rng))


@lru_cache(maxsize=4096)
def _kernel(key: tuple, m: int) -> np.ndarray:
    p, n, raw = key
    L = np.frombuffer(raw, dtype=np.int64).reshape(n, n)
    return gf.nullspace(gf.matpow(L, m, p), p)


@lru_cache(maxsize=4096)
def _power(key: tuple, m: int) -> np.ndarray:
    p, n, raw = key
    L = np.frombuffer(raw, dtype=np.int64).reshape(n, n)
    return gf.matpow(L, m, p)


@lru_cache(maxsize=4096)
def _image(key: tuple, m: int) -> np.ndarray:
    return gf.colspace(_power(key, m), key[0])


@lru_cache(maxsize=4096)
def _restriction_frame(key: tuple, m: int, n: int) -> tuple:
    p = key[0]
    Km, Kn, Knm = _kernel(key, m), _kernel(key, n), _kernel(key, n + m)
    WA = gf.colspace(gf.matmul(_power(key, n), Knm, p), p)
    WB = gf.colspace(gf.matmul(_power(key, m), Knm, p), p)
    X = gf.complement_in(WA, Km, p)
    Y = gf.complement_in(WB, Kn, p)
    return Km, Kn, WA, WB, X, Y


def annihilator(mod: PairedLambdaModule, m: int) -> np.ndarray:
    """Right annihilator {y : <x, y> = 0 for all x in ker lambda^m}."""
    K = _kernel(_key(mod), m)
    return gf.nullspace(gf.matmul(K.T, mod.gram, mod.p), mod.p)


def verify_annihilator(mod: PairedLambdaModule, m: int) -> bool:
    """Both annihilators of ker(lambda^m) equal lambda^m M.

    Checked as containment of lambda^m M in each annihilator plus equality
    of dimensions (dim ann = n - rank(K^T G)).
    """
    p, G = mod.p, mod.gram
    key = _key(mod)
    K = _kernel(key, m)
    image = _image(key, m)
    n = mod.dimension
    for form in (G, G.T):
        KG = gf.matmul(K.T, form, p)
        if gf.matmul(KG, image, p).any():
            return False
        if n - gf.rank(KG, p) != image.shape[1]:
            return False
    return True


def restriction_gram(mod: PairedLambdaModule, m: int, n: int) -> tuple:
    """Induced pairing ker(l^m)/l^n ker(l^(n+m)) x ker(l^n)/l^m ker(l^(n+m)).

    Returns (dim_left, dim_right, gram block).  Raises if the pairing is
    not well defined on the quotients.
    """
    p, G = mod.p, mod.gram
    Km, Kn, WA, WB, X, Y = _restriction_frame(_key(mod), m, n)
    if gf.matmul(gf.matmul(WA.T, G, p), Kn, p).any() or \
            gf.matmul(gf.matmul(Km.T, G, p), WB, p).any():
        raise AssertionError("induced pairing is not well defined")
    R = gf.matmul(gf.matmul(X.T, G, p), Y, p)
    return X.shape[1], Y.shape[1], R


def verify_perfect_restriction(mod: PairedLambdaModule, m: int, n: int) -> bool:
    try:
        da, db, R = restriction_gram(mod, m, n)
    except AssertionError:
        return False
    if da != db:
        return False
    return da == 0 or gf.rank(R, mod.p) == da


def module_quotient_dim(L: np.ndarray, p: int, m: int, n: int) -> int:
    """quotient_dim computed from a realization instead of the closed form."""
    key = (int(p), L.shape[0], np.ascontiguousarray(L, dtype=np.int64).tobytes())
    Km = _kernel(key, m)
    W = gf.matmul(_power(key, n), _kernel(key, n + m), p)
    return Km.shape[1] - gf.rank(W, p)


class ConstraintKind(enum.Enum):
    QUOTIENT_DIM_EQ = "quotient_dim ="
    QUOTIENT_DIM_GE = "quotient_dim >="
    TORSION_SHAPE = "torsion_shape"
    PART_CAP = "part_cap"


@dataclass(frozen=True)
class StructureConstraint:
    kind: ConstraintKind
    m: int = 0
    n: int = 0
    value: int = 0
    shape: tuple = ()

    def __call__(self, parts: tuple) -> bool:
        k = self.kind
        if k is ConstraintKind.QUOTIENT_DIM_EQ:
            return quotient_dim(parts, self.m, self.n) == self.value
        if k is ConstraintKind.QUOTIENT_DIM_GE:
            return quotient_dim(parts, self.m, self.n) >= self.value
        if k is ConstraintKind.TORSION_SHAPE:
            return clipped_shape(parts, self.m) == self.shape
        return all(e <= self.value for e in parts)

    def __str__(self):
        k = self.kind
        if k is ConstraintKind.QUOTIENT_DIM_EQ:
            return f"quotient_dim {self.m} {self.n} = {self.value}"
        if k is ConstraintKind.QUOTIENT_DIM_GE:
            return f"quotient_dim {self.m} {self.n} >= {self.value}"
        if k is ConstraintKind.TORSION_SHAPE:
            return f"torsion_shape {self.m} {','.join(map(str, self.shape))}"
        return f"part_cap {self.value}"


def qdim_eq(m, n, v):
    return StructureConstraint(ConstraintKind.QUOTIENT_DIM_EQ, m=m, n=n, value=v)


def qdim_ge(m, n, v):
    return StructureConstraint(ConstraintKind.QUOTIENT_DIM_GE, m=m, n=n, value=v)


def torsion_shape(k, shape):
    return StructureConstraint(ConstraintKind.TORSION_SHAPE, m=k, shape=as_partition(shape))


def part_cap(k):
    return StructureConstraint(ConstraintKind.PART_CAP, value=k)


def freeness_constraints(t: int) -> list:
    """Sha[lambda^3] with a trivial lambda^2 x lambda pairing and t-dimensional Sha[lambda].

    M[lambda] has dimension = number of parts = quotient_dim(1, cap).
    """
    return [part_cap(3), qdim_eq(2, 1, 0), qdim_eq(1, 2, 0), qdim_eq(1, 3, t)]


# Sha[lambda^4] whose lambda^3-torsion is free of rank 2 and whose
# lambda^3 x lambda pairing is nontrivial.
EXACT_STRUCTURE_CONSTRAINTS = [part_cap(4), torsion_shape(3, (3, 3)), qdim_ge(3, 1, 2)]


def iter_partitions(dim_cap: int, part_cap: int):
    """All partitions with parts <= part_cap and total <= dim_cap, in a fixed order."""
    def rec(remaining, largest):
        yield ()
        for e in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - e, e):
                yield (e,) + rest
    yield from sorted(rec(dim_cap, part_cap), key=lambda q: (sum(q), q))


def deduce_partitions(constraints, part_cap: int, dim_cap: int) -> list:
    """Every partition (parts <= part_cap, total <= dim_cap) meeting all constraints.

    Parts equal to part_cap stand for "at least part_cap" only through
    PART_CAP constraints; the search itself never goes beyond the caps.
    """
    if not 1 <= part_cap <= PART_CAP_LIMIT or not 0 <= dim_cap <= DIM_CAP_LIMIT:
        raise CapExceeded(f"caps must satisfy part_cap <= {PART_CAP_LIMIT}, dim_cap <= {DIM_CAP_LIMIT}")
    constraints = list(constraints)
    return [q for q in iter_partitions(dim_cap, part_cap) if all(c(q) for c in constraints)]


_LINE_RE = {
    "quotient_dim": re.compile(r"^quotient_dim\s+(\d+)\s+(\d+)\s*(>=|=)\s*(\d+)$"),
    "part_cap": re.compile(r"^part_cap\s+(\d+)$"),
    "torsion_shape": re.compile(r"^torsion_shape\s+(\d+)\s+(\d+(?:\s*,\s*\d+)*)?$"),
}


class ConstraintSyntaxError(FermatShaError, ValueError):
    pass


def parse_constraints(text: str) -> list:
    """Parse the one-constraint-per-line text format; '#' starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        rx = _LINE_RE.get(head)
        mt = rx.match(line) if rx else None
        if mt is None:
            raise ConstraintSyntaxError(f"line {lineno}: cannot parse {raw.strip()!r}")
        if head == "quotient_dim":
            m, n, op, v = mt.groups()
            if int(m) < 1 or int(n) < 1:
                raise ConstraintSyntaxError(f"line {lineno}: m and n must be positive")
            out.append((qdim_ge if op == ">=" else qdim_eq)(int(m), int(n), int(v)))
        elif head == "part_cap":
            out.append(part_cap(int(mt.group(1))))
        else:
            k, shape = mt.groups()
            parts = [int(s) for s in shape.split(",")] if shape else []
            out.append(torsion_shape(int(k), parts))
    return out


def format_constraints(constraints) -> str:
    return "".join(f"{c}\n" for c in constraints)
