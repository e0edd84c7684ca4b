"""Exact characters of symmetric groups and the restrictions used for hook representations.

Partitions are weakly decreasing tuples of positive ints.  Characters are
indexed by cycle types (also partitions).  Everything is integer or
Fraction arithmetic; cyclic restrictions use Ramanujan sums so that no
roots of unity are ever materialised.
"""
from __future__ import annotations

import csv
import io
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import comb, factorial, gcd, prod
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .linalg import Echelon, permutation_sign, sort_sign

Partition = Tuple[int, ...]
CharacterVector = Dict[Partition, int]


class PartitionError(ValueError):
    pass


def partition(parts: Iterable[int]) -> Partition:
    p = tuple(parts)
    if any(x <= 0 for x in p) or any(a < b for a, b in zip(p, p[1:])):
        raise PartitionError(f"not a partition: {p}")
    return p


def parse_partition(text: str) -> Partition:
    """``"4,1,1"`` or ``"4 1 1"`` -> (4, 1, 1)."""
    return partition(int(t) for t in text.replace(",", " ").split())


def hook(x: int, y: int) -> Partition:
    """The hook shape ``(x, 1^y)``."""
    if x < 1 or y < 0:
        raise PartitionError(f"no hook ({x}, 1^{y})")
    return (x,) + (1,) * y


def is_hook(p: Partition) -> bool:
    return all(x == 1 for x in p[1:])


@lru_cache(maxsize=None)
def partitions(n: int, largest: int = None) -> Tuple[Partition, ...]:
    """All partitions of ``n``, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def hooks(n: int) -> List[Partition]:
    return [hook(n - y, y) for y in range(n)]


def conjugate(p: Partition) -> Partition:
    return tuple(sum(1 for x in p if x > i) for i in range(p[0])) if p else ()


def dimension(p: Partition) -> int:
    """Hook length formula."""
    n = sum(p)
    pc = conjugate(p)
    h = 1
    for i, row in enumerate(p):
        for j in range(row):
            h *= (row - j - 1) + (pc[j] - i - 1) + 1
    return factorial(n) // h


def centralizer_order(mu: Partition) -> int:
    c = Counter(mu)
    return prod(k ** m * factorial(m) for k, m in c.items())


def class_size(mu: Partition) -> int:
    return factorial(sum(mu)) // centralizer_order(mu)


def cycle_type(perm: Sequence[int]) -> Partition:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        out.append(length)
    return tuple(sorted(out, reverse=True))


# ------------------------------------------------------ Murnaghan-Nakayama

def _to_beta(p: Partition, length: int) -> Tuple[int, ...]:
    p = tuple(p) + (0,) * (length - len(p))
    return tuple(p[i] + length - 1 - i for i in range(length))


def _from_beta(beta: Sequence[int]) -> Partition:
    b = sorted(beta, reverse=True)
    L = len(b)
    return tuple(x for x in (b[i] - (L - 1 - i) for i in range(L)) if x > 0)


@lru_cache(maxsize=None)
def character_value(p: Partition, mu: Partition) -> int:
    """chi_p at cycle type mu, by removing border strips of length mu[0]."""
    if sum(p) != sum(mu):
        raise PartitionError(f"{p} and {mu} have different sizes")
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    L = len(p)
    beta = _to_beta(p, L)
    bset = set(beta)
    total = 0
    for b in beta:
        if b - k >= 0 and b - k not in bset:
            # sign = (-1)^(number of beta numbers strictly between b-k and b)
            between = sum(1 for c in beta if b - k < c < b)
            new = _from_beta([c if c != b else b - k for c in beta])
            total += (-1) ** between * character_value(new, rest)
    return total


def character(p: Partition) -> CharacterVector:
    p = partition(p)
    return {mu: character_value(p, mu) for mu in partitions(sum(p))}


def inner_product(chi: Mapping[Partition, int], psi: Mapping[Partition, int]) -> Fraction:
    """Class-function inner product on S_n (characters are real)."""
    n = sum(next(iter(chi)))
    return Fraction(sum(class_size(mu) * chi[mu] * psi[mu] for mu in chi), factorial(n))


def sign_character(n: int) -> CharacterVector:
    return {mu: (-1) ** (n - len(mu)) for mu in partitions(n)}


# --------------------------------------------------- Littlewood-Richardson

def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """c^lam_{mu,nu}: LR tableaux of shape lam/mu and content nu (combinatorial rule)."""
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    mu = tuple(mu) + (0,) * (len(lam) - len(mu))
    if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
        return 0
    rows = [(mu[i], lam[i]) for i in range(len(lam))]
    k = len(nu)

    def fill_row(i, above, counts):
        if i == len(rows):
            return 1 if list(counts) == list(nu) else 0
        start, end = rows[i]
        width = end - start
        total = 0
        for row in _weak_rows(width, k):
            ok = True
            for c, x in enumerate(row):
                col = start + c
                if above is not None and col in above and above[col] >= x:
                    ok = False
                    break
            if not ok:
                continue
            new = list(counts)
            lattice = True
            for x in reversed(row):
                new[x - 1] += 1
                if new[x - 1] > nu[x - 1] or (x > 1 and new[x - 1] > new[x - 2]):
                    lattice = False
                    break
            if not lattice:
                continue
            total += fill_row(i + 1, {start + c: x for c, x in enumerate(row)}, tuple(new))
        return total

    return fill_row(0, None, (0,) * k)


def _weak_rows(width: int, k: int) -> Iterator[Tuple[int, ...]]:
    if width == 0:
        yield ()
        return
    def rec(prefix, lo):
        if len(prefix) == width:
            yield tuple(prefix)
            return
        for x in range(lo, k + 1):
            yield from rec(prefix + [x], x)
    yield from rec([], 1)


def lr_restrict(p: Partition, a: int, b: int) -> Dict[Tuple[Partition, Partition], int]:
    """Res of V_p to S_a x S_b via the Littlewood-Richardson rule."""
    if a + b != sum(p):
        raise PartitionError("a + b must equal |p|")
    out = {}
    for alpha in partitions(a):
        for beta in partitions(b):
            c = lr_coefficient(p, alpha, beta)
            if c:
                out[(alpha, beta)] = c
    return out


def lr_restrict_by_characters(p: Partition, a: int, b: int) -> Dict[Tuple[Partition, Partition], int]:
    """The same decomposition by character inner products over S_a x S_b."""
    out = {}
    order = factorial(a) * factorial(b)
    for alpha in partitions(a):
        for beta in partitions(b):
            s = 0
            for m1 in partitions(a):
                for m2 in partitions(b):
                    mu = tuple(sorted(m1 + m2, reverse=True))
                    s += class_size(m1) * class_size(m2) * character_value(p, mu) \
                        * character_value(alpha, m1) * character_value(beta, m2)
            if s:
                if s % order:
                    raise ArithmeticError("non-integral multiplicity")
                out[(alpha, beta)] = s // order
    return out


def induce_product(alpha: Partition, beta: Partition) -> Dict[Partition, int]:
    """Ind from S_a x S_b of V_alpha (x) V_beta, by Frobenius reciprocity."""
    n = sum(alpha) + sum(beta)
    return {lam: c for lam in partitions(n) if (c := lr_coefficient(lam, alpha, beta))}


# ------------------------------------------------------------ wreath

def wreath_elements(q: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """All (sign bits, block permutation) pairs of S_2 wr S_q."""
    for bits in product((0, 1), repeat=q):
        for tau in permutations(range(q)):
            yield bits, tau


def wreath_permutation(bits: Sequence[int], tau: Sequence[int]) -> Tuple[int, ...]:
    """Block action on 2q points: point ``2i + b`` goes to ``2 tau(i) + (b xor bits[i])``."""
    q = len(tau)
    out = [0] * (2 * q)
    for i in range(q):
        for b in (0, 1):
            out[2 * i + b] = 2 * tau[i] + (b ^ bits[i])
    return tuple(out)


@lru_cache(maxsize=None)
def wreath_class_counts(q: int) -> Dict[Tuple[Partition, int], int]:
    """Number of wreath elements per (cycle type in S_2q, sign of the block permutation)."""
    counts: Counter = Counter()
    for bits, tau in wreath_elements(q):
        counts[(cycle_type(wreath_permutation(bits, tau)), permutation_sign(tau))] += 1
    return dict(counts)


def wreath_order(q: int) -> int:
    return 2 ** q * factorial(q)


def wreath_hook_multiplicity(p: Partition, q: int) -> int:
    """Multiplicity of L_q (sign of the block permutation) in Res of V_p to S_2 wr S_q."""
    if sum(p) != 2 * q:
        raise PartitionError(f"{p} is not a partition of {2 * q}")
    s = sum(c * character_value(p, mu) * sgn for (mu, sgn), c in wreath_class_counts(q).items())
    if s % wreath_order(q):
        raise ArithmeticError("non-integral multiplicity")
    return s // wreath_order(q)


def full_restriction_multiplicity(p: Partition, q: int, beta: Partition) -> int:
    """Multiplicity of L_q (x) V_beta in Res of V_p to (S_2 wr S_q) x S_m, m = |p| - 2q."""
    m = sum(p) - 2 * q
    if m < 0 or sum(beta) != m:
        raise PartitionError("sizes do not match")
    s = 0
    for (mu, sgn), c in wreath_class_counts(q).items():
        for nu in partitions(m):
            full = tuple(sorted(mu + nu, reverse=True))
            s += c * sgn * class_size(nu) * character_value(p, full) * character_value(beta, nu)
    order = wreath_order(q) * factorial(m)
    if s % order:
        raise ArithmeticError("non-integral multiplicity")
    return s // order


# ------------------------------------------------------------ cyclic

def mobius(n: int) -> int:
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def ramanujan_sum(q: int, i: int) -> int:
    """Sum of ``w^{i k}`` over primitive q-th roots of unity ``w``: an integer."""
    d = gcd(q, i)
    return mobius(q // d) * totient(q) // totient(q // d)


def cyclic_multiplicity(p: Partition, i: int) -> int:
    """Multiplicity of the character ``sigma -> w^i`` in Res of V_p to the cyclic group of an N-cycle.

    ``(1/N) sum_k chi(sigma^k) w^{-ik}``; ``sigma^k`` has cycle type
    ``(N/d)^d`` with ``d = gcd(k, N)``, and the k with a given d sum to a
    Ramanujan sum.
    """
    N = sum(p)
    if not 0 <= i < N:
        raise ValueError(f"i must lie in [0, {N})")
    s = 0
    for d in range(1, N + 1):
        if N % d:
            continue
        q = N // d
        s += character_value(p, (q,) * d) * ramanujan_sum(q, i)
    if s % N:
        raise ArithmeticError("non-integral multiplicity")
    return s // N


def cyclic_multiplicities(chars: Iterable[Partition], N: int) -> List[int]:
    """Multiplicities of every ``W_i`` in the direct sum of the given irreducibles of S_N."""
    chars = list(chars)
    return [sum(cyclic_multiplicity(p, i) for p in chars) for i in range(N)]


# --------------------------------------------------- relation orbit span

def _apply_perm_wedge(vec: Mapping[tuple, Fraction], perm: Mapping[int, int]) -> Dict[tuple, Fraction]:
    out: Dict[tuple, Fraction] = {}
    for key, x in vec.items():
        s, k = sort_sign([perm.get(l, l) for l in key])
        out[k] = out.get(k, 0) + s * x
    return {k: x for k, x in out.items() if x}


def relation_vector(t: int, j: int) -> Dict[tuple, Fraction]:
    """``(id + sum_i (i, t+1)) (m_t (x) alpha)`` in the wedge coordinates of the induced module.

    ``m_t (x) alpha`` is the wedge ``(t+1) ^ ... ^ (t+2j)``.
    """
    top = {tuple(range(t + 1, t + 2 * j + 1)): Fraction(1)}
    out = dict(top)
    for i in range(1, t + 1):
        for k, x in _apply_perm_wedge(top, {i: t + 1, t + 1: i}).items():
            out[k] = out.get(k, 0) + x
    return {k: x for k, x in out.items() if x}


def orbit_span(vec: Mapping[tuple, Fraction], n: int) -> Tuple[Echelon, Dict[tuple, int]]:
    """Echelon basis of the S_n-submodule generated by ``vec`` (closure under adjacent transpositions)."""
    index: Dict[tuple, int] = {}

    def idx(v):
        out = {}
        for k, x in v.items():
            if k not in index:
                index[k] = len(index)
            out[index[k]] = x
        return out

    ech = Echelon()
    todo = [dict(vec)]
    ech.add(idx(vec))
    gens = [{a: a + 1, a + 1: a} for a in range(1, n)]
    while todo:
        v = todo.pop()
        for g in gens:
            w = _apply_perm_wedge(v, g)
            if ech.add(idx(w)):
                todo.append(w)
    return ech, index


def relation_span_dimension(t: int, j: int) -> int:
    """Dimension of the S_{t+2j}-span of the relation vector."""
    if t < 1 or j < 1:
        raise ValueError("t, j >= 1")
    ech, _ = orbit_span(relation_vector(t, j), t + 2 * j)
    return len(ech)


def relation_span_character(t: int, j: int) -> CharacterVector:
    """Character of the module spanned by the relation orbit, from traces on an RREF basis."""
    n = t + 2 * j
    ech, index = orbit_span(relation_vector(t, j), n)
    rref = ech.fully_reduced()
    inv = {i: k for k, i in index.items()}
    chi = {}
    for mu in partitions(n):
        perm, start = {}, 1
        for length in mu:
            for a in range(length):
                perm[start + a] = start + (a + 1) % length
            start += length
        tr = Fraction(0)
        for piv, row in rref.items():
            img = _apply_perm_wedge({inv[c]: x for c, x in row.items()}, perm)
            tr += img.get(inv[piv], 0)
        chi[mu] = int(tr)
    return chi


# ------------------------------------------------------------ tables

def table_csv(rows: Iterable[Tuple[str, str, str, int]]) -> str:
    """CSV with header ``partition,subgroup,irrep,multiplicity``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["partition", "subgroup", "irrep", "multiplicity"])
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def fmt(p: Partition) -> str:
    return "(" + ",".join(map(str, p)) + ")"
