"""Finite group actions as explicit permutations, and exact orbit counting.

The k-th moment of an action is the number of orbits on k-tuples.  For a
materialized action it is evaluated through the fixed-point histogram
(average of chi(g)**k over the group); actions too large to materialize
keep a generating set and fall back to direct orbit counting on the tuple
space, which computes the same number from its definition.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .core_arith import CapacityError, is_prime
from .residue_algebra import (
    QuadOrderSpec,
    QuadResidue,
    glm_order,
    quad_mul,
    quad_unit_elements,
)

DEFAULT_ELEMENT_BUDGET = 10**7
DEFAULT_ENTRY_BUDGET = 6 * 10**7
DEFAULT_TUPLE_BUDGET = 10**7


def _perm_dtype(size: int):
    if size <= 2**8:
        return np.uint8
    if size <= 2**16:
        return np.uint16
    return np.int64


@dataclass
class PermutationAction:
    """A finite group acting on {0, ..., size-1}.

    perms holds one permutation row per group element when the group is
    materialized, and None when only a generating set is stored (the
    generators rows always generate the full group).
    """

    size: int
    perms: np.ndarray | None
    generators: np.ndarray
    group_order: int
    descriptor: str = ""
    labels: list | None = field(default=None, repr=False)


def build_units(n: int) -> PermutationAction:
    """(Z/nZ)^x acting on Z/nZ by multiplication."""
    if n < 1:
        raise ValueError("n must be >= 1")
    units = [r for r in range(n) if gcd(r, n) == 1] or [0]
    perms = np.outer(units, np.arange(n)) % n if n > 1 else np.zeros((1, 1), int)
    perms = perms.astype(_perm_dtype(n))
    return PermutationAction(
        size=n,
        perms=perms,
        generators=perms,
        group_order=len(units),
        descriptor=f"units:{n}",
        labels=units,
    )


def build_semidirect(n: int) -> PermutationAction:
    """Pairs (b, d) with d a unit, acting on (i, j) by (b + i*d, j*d)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    units = [d for d in range(n) if gcd(d, n) == 1] or [0]
    i_grid, j_grid = np.divmod(np.arange(n * n), n)  # point index = i*n + j
    rows = []
    labels = []
    for b in range(n):
        for d in units:
            rows.append(((b + i_grid * d) % n) * n + (j_grid * d) % n)
            labels.append((b, d))
    perms = np.array(rows, dtype=_perm_dtype(n * n))
    gen_labels = [(1 % n, 1 % n)] + [(0, d) for d in units]
    gens = perms[[labels.index(lab) for lab in gen_labels]]
    return PermutationAction(
        size=n * n,
        perms=perms,
        generators=gens,
        group_order=len(rows),
        descriptor=f"semidirect:{n}",
        labels=labels,
    )


def build_quad_units(n: int, d: int) -> PermutationAction:
    """(O_K/nO_K)^x acting on O_K/nO_K by multiplication; point index a*n + b."""
    if n < 1:
        raise ValueError("n must be >= 1")
    spec = QuadOrderSpec(d)
    units = quad_unit_elements(n, spec) if n > 1 else [QuadResidue(0, 0, 1, spec)]
    rows = []
    for u in units:
        row = [0] * (n * n)
        for a in range(n):
            for b in range(n):
                v = quad_mul(u, QuadResidue(a, b, n, spec))
                row[a * n + b] = v.a * n + v.b
        rows.append(row)
    perms = np.array(rows, dtype=_perm_dtype(n * n))
    return PermutationAction(
        size=n * n,
        perms=perms,
        generators=perms,
        group_order=len(units),
        descriptor=f"quad:{n},{d}",
        labels=[(u.a, u.b) for u in units],
    )


def _glm_point_table(n: int, m: int) -> np.ndarray:
    """(m, n**m) digit table: column j is the vector with index j = sum v_i * n**i."""
    idx = np.arange(n**m, dtype=np.int64)
    return np.stack([(idx // n**i) % n for i in range(m)])


def _apply_matrices(mats: np.ndarray, points: np.ndarray, n: int) -> np.ndarray:
    """Map each matrix (k, m, m) to the permutation it induces on vector indices."""
    m = points.shape[0]
    images = np.matmul(mats, points) % n  # (k, m, n**m)
    weights = (n ** np.arange(m, dtype=np.int64)).reshape(1, m, 1)
    return (images * weights).sum(axis=1)


def _glm_generator_matrices(n: int, m: int) -> list[np.ndarray]:
    """Elementary transvections plus unit scalings of the first coordinate.

    These generate GL_m(Z/nZ): Gaussian elimination works locally at each
    prime power, and the determinant is adjusted by the diagonal units.
    """
    gens = []
    for u in range(2, n):
        if gcd(u, n) == 1:
            g = np.eye(m, dtype=np.int64)
            g[0, 0] = u
            gens.append(g)
    for i in range(m):
        for j in range(m):
            if i != j:
                g = np.eye(m, dtype=np.int64)
                g[i, j] = 1
                gens.append(g)
    if not gens:
        gens.append(np.eye(m, dtype=np.int64))
    return gens


def build_glm(
    n: int,
    m: int,
    element_budget: int = DEFAULT_ELEMENT_BUDGET,
    entry_budget: int = DEFAULT_ENTRY_BUDGET,
) -> PermutationAction:
    """GL_m(Z/nZ) acting on (Z/nZ)**m; vector index = sum v_i * n**i.

    The full element list is materialized when it fits the budgets;
    otherwise only the generating set is kept and moment evaluation goes
    through direct orbit counting.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if m < 1 or m > 4:
        raise ValueError("matrix dimension must be between 1 and 4")
    order = glm_order(n, m)
    size = n**m
    points = _glm_point_table(n, m)
    gen_perms = _apply_matrices(
        np.stack([g % n for g in _glm_generator_matrices(n, m)]), points, n
    ).astype(_perm_dtype(size))
    perms = None
    if n == 1:
        perms = np.zeros((1, 1), dtype=_perm_dtype(size))
    elif order <= element_budget and order * size <= entry_budget:
        mats = _enumerate_glm_matrices(n, m)
        perms = np.empty((order, size), dtype=_perm_dtype(size))
        chunk = max(1, 2**22 // size)
        for lo in range(0, order, chunk):
            hi = min(lo + chunk, order)
            perms[lo:hi] = _apply_matrices(mats[lo:hi], points, n)
    return PermutationAction(
        size=size,
        perms=perms,
        generators=gen_perms,
        group_order=order,
        descriptor=f"glm:{n},{m}",
    )


def _enumerate_glm_matrices(n: int, m: int) -> np.ndarray:
    """All invertible m x m matrices mod n, entry-lexicographic, vectorized."""
    total = n ** (m * m)
    idx = np.arange(total, dtype=np.int64)
    flat = np.stack(
        [(idx // n ** (m * m - 1 - e)) % n for e in range(m * m)], axis=1
    )
    mats = flat.reshape(total, m, m)
    det = _vec_det(mats, n)
    coprime = np.gcd(det, n) == 1
    return mats[coprime]


def _vec_det(mats: np.ndarray, n: int) -> np.ndarray:
    m = mats.shape[1]
    if m == 1:
        return mats[:, 0, 0] % n
    if m == 2:
        return (mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]) % n
    total = np.zeros(mats.shape[0], dtype=np.int64)
    sign = 1
    cols = list(range(m))
    for j in range(m):
        rest = cols[:j] + cols[j + 1 :]
        minor = mats[:, 1:, :][:, :, rest]
        total = (total + sign * mats[:, 0, j] * _vec_det(minor, n)) % n
        sign = -sign
    return total % n


def build_gl2(ell: int, **budgets) -> PermutationAction:
    if not is_prime(ell):
        raise ValueError("gl2 actions are indexed by a prime")
    action = build_glm(ell, 2, **budgets)
    action.descriptor = f"gl2:{ell}"
    return action


def build_action(descriptor: str, **budgets) -> PermutationAction:
    """Build from a descriptor string: units:4, glm:12,2, semidirect:6,
    quad:5,-1, gl2:7."""
    kind, _, arg = descriptor.partition(":")
    try:
        nums = [int(v) for v in arg.split(",")] if arg else []
    except ValueError:
        raise ValueError(f"bad action descriptor {descriptor!r}")
    if kind == "units" and len(nums) == 1:
        return build_units(nums[0])
    if kind == "semidirect" and len(nums) == 1:
        return build_semidirect(nums[0])
    if kind == "quad" and len(nums) == 2:
        return build_quad_units(nums[0], nums[1])
    if kind == "glm" and len(nums) == 2:
        return build_glm(nums[0], nums[1], **budgets)
    if kind == "gl2" and len(nums) == 1:
        return build_gl2(nums[0], **budgets)
    raise ValueError(f"bad action descriptor {descriptor!r}")


# ---------------------------------------------------------------------------
# Burnside evaluation.

def fixed_point_histogram(action: PermutationAction) -> dict[int, int]:
    """m -> number of group elements fixing exactly m points."""
    if action.perms is None:
        raise CapacityError(action.group_order, 0, what="materialized elements")
    counts = np.zeros(action.size + 1, dtype=np.int64)
    identity = np.arange(action.size, dtype=action.perms.dtype)
    chunk = max(1, 2**24 // max(action.size, 1))
    for lo in range(0, action.perms.shape[0], chunk):
        fixed = (action.perms[lo : lo + chunk] == identity).sum(axis=1)
        counts += np.bincount(fixed, minlength=action.size + 1)
    return {m: int(c) for m, c in enumerate(counts) if c}


def burnside_moment(action: PermutationAction, k: int) -> int:
    """Number of orbits on k-tuples.

    Materialized actions use the histogram average (1/|G|) sum chi(g)**k,
    asserting the division is exact; generator-only actions count orbits
    on the tuple space directly.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if action.perms is not None:
        hist = fixed_point_histogram(action)
        total = sum(count * m**k for m, count in hist.items())
        orbits, rem = divmod(total, action.group_order)
        if rem:
            raise ArithmeticError(
                f"non-integral orbit count for {action.descriptor}: "
                f"{total}/{action.group_order} (element list is not a group?)"
            )
        return orbits
    return orbit_count_oracle(action, k)


class UnionFind:
    """Array union-find with path halving."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.count = size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx
            self.count -= 1


def orbit_count_oracle(
    action: PermutationAction, k: int, tuple_budget: int = DEFAULT_TUPLE_BUDGET
) -> int:
    """Count orbits on k-tuples by union-find over mixed-radix tuple indices."""
    if k < 1:
        raise ValueError("k must be >= 1")
    total = action.size**k
    if total > tuple_budget:
        raise CapacityError(total, tuple_budget, what="tuples")
    gens = action.generators if action.generators is not None else action.perms
    uf = UnionFind(total)
    idx = np.arange(total, dtype=np.int64)
    weights = [action.size**i for i in range(k)]
    digits = [(idx // w) % action.size for w in weights]
    for g in gens:
        g64 = g.astype(np.int64)
        image = np.zeros(total, dtype=np.int64)
        for dig, w in zip(digits, weights):
            image += g64[dig] * w
        moved = np.nonzero(image != idx)[0]
        union = uf.union
        targets = image[moved]
        for a, b in zip(moved.tolist(), targets.tolist()):
            union(a, b)
    return sum(1 for i in range(total) if uf.parent[i] == i)


def orbit_size(action: PermutationAction, point: int) -> int:
    """Size of the orbit of a single point."""
    if action.perms is not None:
        return int(np.unique(action.perms[:, point]).size)
    current = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for g in action.generators:
            for x in frontier:
                y = int(g[x])
                if y not in current:
                    current.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(current)


def predicted_value_distribution(action: PermutationAction) -> dict[int, Fraction]:
    """m -> |G(m)|/|G|, the predicted density of primes with value m."""
    hist = fixed_point_histogram(action)
    return {m: Fraction(c, action.group_order) for m, c in hist.items()}


def mulclose(perms: np.ndarray, maxsize: int = 10**6) -> set[tuple[int, ...]]:
    """Closure of a set of permutations under composition (testing aid)."""
    gens = [tuple(int(v) for v in g) for g in perms]
    els = set(gens)
    frontier = list(els)
    while frontier:
        new = []
        for g in gens:
            for h in frontier:
                gh = tuple(g[x] for x in h)
                if gh not in els:
                    els.add(gh)
                    new.append(gh)
                    if len(els) > maxsize:
                        raise CapacityError(len(els), maxsize, what="closure elements")
        frontier = new
    return els
