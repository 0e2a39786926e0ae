"""Finite free modules with sigma-actions or twisted connections.

With ``v`` a column vector over the coefficient algebra and ``sigma_i``,
``partial_i`` applied entrywise:

* :class:`SigmaModule`: ``sigma_{M,i}(v) = S_i * sigma_i(v)``
* :class:`DiffModule`: ``D_{M,i}(v) = partial_i(v) + N_i * sigma_i(v)``

The two are exchanged by ``S_i = I - y_i N_i`` (always) and
``N_i = (I - S_i) / y_i`` (strong twists).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import polys as P
from .errors import NotStrong, RankMismatch, SchwarzViolated
from .linalg import Echelon, kernel
from .twistalg import LAURENT, POLY, CoeffElem, TwistSpec, schwarz_check

# ---------------------------------------------------------------------------
# small dense matrix helpers over CoeffElem


def _as_matrix(alg, rows):
    mat = tuple(tuple(alg(c) for c in row) for row in rows)
    r = len(mat)
    if any(len(row) != r for row in mat):
        raise RankMismatch("matrices must be square")
    return mat


def identity(alg, r):
    one, zero = alg.one(), alg.zero()
    return tuple(tuple(one if i == j else zero for j in range(r)) for i in range(r))


def mat_mul(a, b):
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = a[i][0] * b[0][j]
            for t in range(1, m):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v):
    out = []
    for row in a:
        acc = row[0] * v[0]
        for x, y in zip(row[1:], v[1:]):
            acc = acc + x * y
        out.append(acc)
    return tuple(out)


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def mat_map(fn, a):
    return tuple(tuple(fn(x) for x in row) for row in a)


def mat_str(a) -> str:
    return " ".join("[" + ", ".join(str(x) for x in row) + "]" for row in a)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SigmaModule:
    twist: TwistSpec
    mats: tuple  # S_i, one per twist

    def __post_init__(self):
        alg = self.twist.alg
        mats = tuple(_as_matrix(alg, m) for m in self.mats)
        if len(mats) != len(self.twist):
            raise RankMismatch(f"expected {len(self.twist)} matrices, got {len(mats)}")
        if len({len(m) for m in mats}) > 1:
            raise RankMismatch("all matrices must have the same size")
        object.__setattr__(self, "mats", mats)

    @property
    def rank(self) -> int:
        return len(self.mats[0])

    @classmethod
    def trivial(cls, twist: TwistSpec, r: int = 1):
        """``A^r`` with ``sigma_{M,i} = sigma_i`` entrywise."""
        return cls(twist, tuple(identity(twist.alg, r) for _ in range(len(twist))))


@dataclass(frozen=True)
class DiffModule:
    twist: TwistSpec
    mats: tuple  # N_i, one per twist

    def __post_init__(self):
        alg = self.twist.alg
        mats = tuple(_as_matrix(alg, m) for m in self.mats)
        if len(mats) != len(self.twist):
            raise RankMismatch(f"expected {len(self.twist)} matrices, got {len(mats)}")
        if len({len(m) for m in mats}) > 1:
            raise RankMismatch("all matrices must have the same size")
        object.__setattr__(self, "mats", mats)

    @property
    def rank(self) -> int:
        return len(self.mats[0])

    @classmethod
    def trivial(cls, twist: TwistSpec, r: int = 1):
        z = twist.alg.zero()
        zero = tuple(tuple(z for _ in range(r)) for _ in range(r))
        return cls(twist, tuple(zero for _ in range(len(twist))))


@dataclass
class KernelReport:
    degree_bound: int
    basis: list
    dimension: int
    stable: bool
    exact: bool = True
    notes: list = field(default_factory=list)


# ---------------------------------------------------------------------------


def sigma_to_diff(M: SigmaModule) -> DiffModule:
    t = M.twist
    if not t.strong:
        raise NotStrong("sigma -> diff translation needs a strong twist")
    alg = t.alg
    eye = identity(alg, M.rank)
    mats = []
    for i, S in enumerate(M.mats):
        yinv = t.y(i).inverse()
        mats.append(mat_scale(yinv, mat_sub(eye, S)))
    return DiffModule(t, tuple(mats))


def diff_to_sigma(M: DiffModule) -> SigmaModule:
    t = M.twist
    eye = identity(t.alg, M.rank)
    return SigmaModule(t, tuple(mat_sub(eye, mat_scale(t.y(i), N)) for i, N in enumerate(M.mats)))


def module_apply(M, i: int, v):
    """``sigma_{M,i}(v)`` for a SigmaModule, ``D_{M,i}(v)`` for a DiffModule."""
    t = M.twist
    alg = t.alg
    if len(v) != M.rank:
        raise RankMismatch(f"vector of length {len(v)} for a rank {M.rank} module")
    v = tuple(alg(x) for x in v)
    sv = tuple(t.sigma(i, x) for x in v)
    if isinstance(M, SigmaModule):
        return mat_vec(M.mats[i], sv)
    dv = tuple(t.partial(i, x) for x in v)
    return tuple(a + b for a, b in zip(dv, mat_vec(M.mats[i], sv)))


def check_sigma_compat(M: SigmaModule):
    """``(ok, first violating pair)``: ``S_i sigma_i(S_j) == S_j sigma_j(S_i)``."""
    t = M.twist
    for i, j in itertools.combinations(range(len(t)), 2):
        Si, Sj = M.mats[i], M.mats[j]
        lhs = mat_mul(Si, mat_map(lambda c: t.sigma(i, c), Sj))
        rhs = mat_mul(Sj, mat_map(lambda c: t.sigma(j, c), Si))
        if lhs != rhs:
            return False, (i, j)
    return True, None


def check_integrability(M: DiffModule):
    """``(ok, first violating pair)``; the connections must commute on the
    standard basis.  Requires a twist of Schwarz type."""
    t = M.twist
    ok, bad = schwarz_check(t)
    if not ok:
        raise SchwarzViolated(f"ambient twist is not of Schwarz type: {bad[:3]}")
    alg = t.alg
    r = M.rank
    for i, j in itertools.combinations(range(len(t)), 2):
        for k in range(r):
            e = tuple(alg.one() if a == k else alg.zero() for a in range(r))
            lhs = module_apply(M, i, module_apply(M, j, e))
            rhs = module_apply(M, j, module_apply(M, i, e))
            if lhs != rhs:
                return False, (i, j)
    return True, None


# ---------------------------------------------------------------------------
# degree-bounded kernels and cokernels


def _vector_basis(alg, r, d):
    mons = alg.monomials_upto(d)
    cols = [(k, e) for e in mons for k in range(r)]
    return cols, {c: n for n, c in enumerate(cols)}


def _unit_vector(alg, r, k, e):
    return tuple(alg.monomial(e) if a == k else alg.zero() for a in range(r))


def _flatten(vec):
    out = {}
    for k, x in enumerate(vec):
        for e, c in x.num.items():
            out[(k, e)] = c
    return out


def _unflatten(alg, r, v):
    ent = [dict() for _ in range(r)]
    for (k, e), c in v.items():
        ent[k][e] = c
    return tuple(CoeffElem(alg, d) for d in ent)


def _check_mode(alg):
    if alg.mode not in (POLY, LAURENT):
        from .errors import ModeError

        raise ModeError("degree-bounded solves need poly or laurent mode")


def _joint_kernel(alg, r, d, maps):
    cols, order = _vector_basis(alg, r, d)
    images = {}
    for k, e in cols:
        u = _unit_vector(alg, r, k, e)
        img = {}
        for idx, fn in enumerate(maps):
            for key, c in _flatten(fn(u)).items():
                img[(idx, key)] = c
        images[(k, e)] = img
    vecs = kernel(images, alg.field, key=lambda c: order[c])
    out = [_unflatten(alg, r, v) for v in vecs]
    out.sort(key=lambda vec: _lead_rank(vec, order), reverse=True)
    return out


def _lead_rank(vec, order):
    return min(order[c] for c in _flatten(vec))


def horizontal_sections(M: DiffModule, degree_bound: int) -> KernelReport:
    """Degree-bounded joint kernel of all ``D_{M,i}``."""
    alg = M.twist.alg
    _check_mode(alg)
    maps = [lambda v, i=i: module_apply(M, i, v) for i in range(len(M.twist))]
    basis = _joint_kernel(alg, M.rank, degree_bound, maps)
    prev = _joint_kernel(alg, M.rank, degree_bound - 1, maps) if degree_bound > 0 else []
    return KernelReport(degree_bound, basis, len(basis), len(prev) == len(basis))


def sigma_kernel(M: SigmaModule, degree_bound: int, indices=None):
    """Degree-bounded joint kernel of ``1 - sigma_{M,i}`` over ``indices``."""
    alg = M.twist.alg
    _check_mode(alg)
    idx = range(len(M.twist)) if indices is None else indices
    maps = [
        lambda v, i=i: tuple(a - b for a, b in zip(v, module_apply(M, i, v))) for i in idx
    ]
    return _joint_kernel(alg, M.rank, degree_bound, maps)


def _cokernel(M: SigmaModule, i: int, d: int):
    alg = M.twist.alg
    r = M.rank
    cols, order = _vector_basis(alg, r, d)
    inside = set(cols)

    def key(c):
        # coordinates outside the degree slice are eliminated first
        return (0, repr(c)) if c not in inside else (1, order[c])

    ech = Echelon(key)
    for k, e in cols:
        u = _unit_vector(alg, r, k, e)
        img = tuple(a - b for a, b in zip(u, module_apply(M, i, u)))
        ech.add(_flatten(img))
    image_pivots = {p for p in ech.rows if p in inside}
    quotient = [c for c in cols if c not in image_pivots]
    quotient.sort(key=lambda c: order[c], reverse=True)
    return [_unit_vector(alg, r, k, e) for k, e in quotient]


def sigma_cohomology(M: SigmaModule, i: int, degree_bound: int):
    """``(H0, H1)`` of ``M --(1 - sigma_{M,i})--> M`` truncated at ``degree_bound``.

    ``H1`` is the quotient of the degree slice by the part of the image of the
    slice that stays inside it; the listed representatives are the standard
    monomial vectors that are not pivots of that image.
    """
    alg = M.twist.alg
    _check_mode(alg)
    h0 = sigma_kernel(M, degree_bound, [i])
    h0_prev = sigma_kernel(M, degree_bound - 1, [i]) if degree_bound > 0 else []
    h1 = _cokernel(M, i, degree_bound)
    h1_prev = _cokernel(M, i, degree_bound - 1) if degree_bound > 0 else []
    graded = M.twist.twists[i].h.is_zero() and all(
        c.is_scalar() for row in M.mats[i] for c in row
    )
    H0 = KernelReport(degree_bound, h0, len(h0), len(h0) == len(h0_prev))
    notes = [] if graded else ["truncated"]
    H1 = KernelReport(degree_bound, h1, len(h1), len(h1) == len(h1_prev), graded, notes)
    return H0, H1


def vector_str(v) -> str:
    if len(v) == 1:
        return str(v[0])
    return "(" + ", ".join(str(x) for x in v) + ")"
