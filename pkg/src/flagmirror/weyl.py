"""Weyl group combinatorics for types A_n (n >= 1), B2 and G2.

Group elements are validated against a faithful finite model: the integer
matrices of the reflection representation acting on simple-root coordinates.
For type A this model is conjugate to the permutation model (``permutation_of``
converts); for B2/G2 it is the explicit rank-2 reflection group.  Length and
descent tests therefore never rely on braid rewriting.

Simple-root indices are 1-based throughout, matching the usual labelling of
words like (1, 2, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .scalars import ConfigurationError, DomainError, ResourceError

_BOND_FROM_PRODUCT = {0: 2, 1: 3, 2: 4, 3: 6}


@dataclass(frozen=True)
class CartanSpec:
    """A Cartan matrix with its bond orders.

    ``cartan[i][j] = <alpha_j, alpha_i^vee>`` with 0-based storage; use
    :meth:`a` for 1-based access.  For B2 and G2 the convention here makes
    index 1 the long root, which is what the braid-transform catalogue assumes.
    """

    label: str
    cartan: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.cartan)
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise ConfigurationError("Cartan diagonal entries must be 2")
            for j in range(n):
                if i != j and self.cartan[i][j] > 0:
                    raise ConfigurationError("off-diagonal Cartan entries must be <= 0")
                if (self.cartan[i][j] == 0) != (self.cartan[j][i] == 0):
                    raise ConfigurationError("Cartan zero pattern must be symmetric")
                if i != j and self.cartan[i][j] * self.cartan[j][i] not in _BOND_FROM_PRODUCT:
                    raise ConfigurationError("off-diagonal product must be 0..3")

    @staticmethod
    def type_a(n: int) -> "CartanSpec":
        if n < 1:
            raise DomainError("type A rank must be >= 1")
        rows = tuple(
            tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n))
            for i in range(n)
        )
        return CartanSpec(f"A{n}", rows)

    @staticmethod
    def b2() -> "CartanSpec":
        return CartanSpec("B2", ((2, -1), (-2, 2)))

    @staticmethod
    def g2() -> "CartanSpec":
        return CartanSpec("G2", ((2, -1), (-3, 2)))

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def a(self, i: int, j: int) -> int:
        return self.cartan[i - 1][j - 1]

    def bond(self, i: int, j: int) -> int:
        """Bond order m_ij in {2, 3, 4, 6}."""
        if i == j:
            raise ConfigurationError("bond order needs distinct indices")
        return _BOND_FROM_PRODUCT[self.a(i, j) * self.a(j, i)]

    @property
    def long_index(self) -> int | None:
        """The long simple root for B2/G2 (always index 1 here), None for A."""
        return None if self.label.startswith("A") else 1

    def group_order(self) -> int:
        if self.label.startswith("A"):
            return math.factorial(self.rank + 1)
        return {"B2": 8, "G2": 12}[self.label]

    # -- reflection representation ------------------------------------

    def simple_reflection(self, i: int):
        """Matrix of s_i on simple-root coordinates (tuple-of-tuples)."""
        n = self.rank
        rows = [[1 if k == j else 0 for j in range(n)] for k in range(n)]
        for j in range(1, n + 1):
            rows[i - 1][j - 1] -= self.a(i, j)
        return tuple(tuple(r) for r in rows)

    def identity_element(self):
        n = self.rank
        return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

    @property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        return _positive_roots(self)


Element = tuple  # rank x rank integer matrix as tuple-of-tuples


def _mat_mul(a: Element, b: Element) -> Element:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_vec(a: Element, v):
    n = len(a)
    return tuple(sum(a[i][k] * v[k] for k in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def _positive_roots(spec: CartanSpec) -> tuple[tuple[int, ...], ...]:
    n = spec.rank
    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    refl = [spec.simple_reflection(i + 1) for i in range(n)]
    roots = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for r in frontier:
            for s in refl:
                img = _mat_vec(s, r)
                if img not in roots and tuple(-c for c in img) not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    return tuple(sorted(r for r in roots if all(c >= 0 for c in r)))


def mult(spec: CartanSpec, w: Element, i: int) -> Element:
    """w * s_i."""
    return _mat_mul(w, spec.simple_reflection(i))


def element_of(spec: CartanSpec, letters) -> Element:
    w = spec.identity_element()
    for i in letters:
        if not 1 <= i <= spec.rank:
            raise DomainError(f"letter {i} out of range for {spec.label}")
        w = mult(spec, w, i)
    return w


def is_ascent(spec: CartanSpec, w: Element, i: int) -> bool:
    """True iff l(w s_i) > l(w), i.e. w(alpha_i) is a positive root."""
    col = tuple(w[k][i - 1] for k in range(spec.rank))
    return all(c >= 0 for c in col)


def length_of(spec: CartanSpec, w: Element) -> int:
    return sum(
        1
        for root in spec.positive_roots
        if any(c < 0 for c in _mat_vec(w, root))
    )


def is_reduced(spec: CartanSpec, letters) -> bool:
    return length_of(spec, element_of(spec, letters)) == len(letters)


def longest_word(spec: CartanSpec) -> tuple[int, ...]:
    """A reduced word for w_0, built by taking the smallest ascent each step."""
    w = spec.identity_element()
    letters = []
    while True:
        for i in range(1, spec.rank + 1):
            if is_ascent(spec, w, i):
                letters.append(i)
                w = mult(spec, w, i)
                break
        else:
            return tuple(letters)


@dataclass(frozen=True)
class WeylWord:
    """A word in simple reflections, tagged with whether it is reduced."""

    spec: CartanSpec
    letters: tuple[int, ...]
    reduced: bool = field(default=True)

    def __post_init__(self):
        if self.reduced and not is_reduced(self.spec, self.letters):
            raise DomainError(f"{self.letters} is not reduced in {self.spec.label}")

    @property
    def element(self) -> Element:
        return element_of(self.spec, self.letters)

    def __len__(self):
        return len(self.letters)


_WORD_GUARD = 10**6


def reduced_words(spec: CartanSpec, target) -> list[WeylWord]:
    """All reduced words of ``target`` (letters or element), lex-sorted.

    Deterministic ordering makes downstream golden files reproducible.
    """
    if spec.group_order() > _WORD_GUARD:
        raise ResourceError(
            f"|W| = {spec.group_order()} exceeds the enumeration guard {_WORD_GUARD}"
        )
    w = element_of(spec, target) if _is_letters(target) else target

    memo: dict[Element, tuple[tuple[int, ...], ...]] = {}

    def words_of(u: Element) -> tuple[tuple[int, ...], ...]:
        if u == spec.identity_element():
            return ((),)
        got = memo.get(u)
        if got is not None:
            return got
        acc = []
        for i in range(1, spec.rank + 1):
            if not is_ascent(spec, u, i):  # right descent: u s_i shorter
                for prefix in words_of(mult(spec, u, i)):
                    acc.append(prefix + (i,))
        out = tuple(sorted(acc))
        memo[u] = out
        return out

    return [WeylWord(spec, letters) for letters in words_of(w)]


@dataclass(frozen=True)
class BraidEdge:
    source: int  # indices into the word list
    target: int
    span: tuple[int, int]  # 1-based [start, end] positions replaced
    bond: int


@dataclass(frozen=True)
class BraidGraph:
    words: tuple[WeylWord, ...]
    edges: tuple[BraidEdge, ...]

    def is_connected(self) -> bool:
        if not self.words:
            return True
        parent = list(range(len(self.words)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            parent[find(e.source)] = find(e.target)
        roots = {find(k) for k in range(len(self.words))}
        return len(roots) == 1


def braid_move_graph(words) -> BraidGraph:
    """Graph on reduced words of one element; edges are single braid moves."""
    words = sorted(words, key=lambda w: w.letters)
    if not words:
        return BraidGraph((), ())
    spec = words[0].spec
    elements = {w.letters: w.element for w in words}
    if len({elements[w.letters] for w in words}) != 1:
        raise ConfigurationError("braid_move_graph needs words of a single element")
    index = {w.letters: k for k, w in enumerate(words)}
    edges = []
    for w in words:
        for move_letters, span, bond in _braid_moves(spec, w.letters):
            j = index.get(move_letters)
            if j is None:
                raise ConfigurationError("braid move left the given word set")
            k = index[w.letters]
            if k < j:
                edges.append(BraidEdge(k, j, span, bond))
    return BraidGraph(tuple(words), tuple(edges))


def _braid_moves(spec: CartanSpec, letters):
    m = len(letters)
    for start in range(m):
        for i, j in ((a, b) for a in range(1, spec.rank + 1)
                     for b in range(1, spec.rank + 1) if a != b):
            bond = spec.bond(i, j)
            if start + bond > m:
                continue
            pattern = tuple(i if k % 2 == 0 else j for k in range(bond))
            if letters[start:start + bond] != pattern:
                continue
            flipped = tuple(j if k % 2 == 0 else i for k in range(bond))
            new = letters[:start] + flipped + letters[start + bond:]
            yield new, (start + 1, start + bond), bond


def some_reduced_word(spec: CartanSpec, w: Element) -> tuple[int, ...]:
    """One reduced word of ``w`` (smallest right descent each step)."""
    acc = []
    u = w
    ident = spec.identity_element()
    while u != ident:
        for i in range(1, spec.rank + 1):
            if not is_ascent(spec, u, i):
                acc.append(i)
                u = mult(spec, u, i)
                break
    return tuple(reversed(acc))


def bruhat_leq(spec: CartanSpec, v, w) -> bool:
    """Bruhat order via the subword property on one reduced word of w."""
    v_el = element_of(spec, v) if _is_letters(v) else v
    w_el = element_of(spec, w) if _is_letters(w) else w
    w_letters = some_reduced_word(spec, w_el)
    reachable = {spec.identity_element()}
    for i in w_letters:
        extra = set()
        for u in reachable:
            if is_ascent(spec, u, i):
                extra.add(mult(spec, u, i))
        reachable |= extra
    return v_el in reachable


def _is_letters(x) -> bool:
    return isinstance(x, tuple) and (not x or isinstance(x[0], int))


@dataclass(frozen=True)
class Subexpression:
    """A distinguished subexpression with its J_0 / J_+ / J_- partition.

    ``positions`` are the 1-based indices of the chosen letters; the chosen
    letters multiply to the subexpression's target element.
    """

    base: WeylWord
    positions: tuple[int, ...]
    j_plus: tuple[int, ...]
    j_minus: tuple[int, ...]

    @property
    def j_zero(self) -> tuple[int, ...]:
        chosen = set(self.positions)
        return tuple(p for p in range(1, len(self.base.letters) + 1) if p not in chosen)

    @property
    def target(self) -> Element:
        chosen = [self.base.letters[p - 1] for p in self.positions]
        return element_of(self.base.spec, tuple(chosen))

    def replay_partition(self):
        """Recompute (J_+, J_-) from the running products; used as a self-check."""
        spec = self.base.spec
        u = spec.identity_element()
        plus, minus = [], []
        for p in self.positions:
            i = self.base.letters[p - 1]
            if is_ascent(spec, u, i):
                plus.append(p)
            else:
                minus.append(p)
            u = mult(spec, u, i)
        return tuple(plus), tuple(minus)


def distinguished_subexpressions(spec: CartanSpec, v, word: WeylWord) -> list[Subexpression]:
    """All distinguished subexpressions of ``word`` multiplying to ``v``.

    At every unchosen position the running product must go up when multiplied
    by that letter; chosen positions are free and classified into J_+/J_-.
    """
    v_el = element_of(spec, v) if _is_letters(v) else v
    letters = word.letters
    results = []

    def walk(pos, u, chosen, plus, minus):
        if pos > len(letters):
            if u == v_el:
                results.append(
                    Subexpression(word, tuple(chosen), tuple(plus), tuple(minus))
                )
            return
        i = letters[pos - 1]
        up = is_ascent(spec, u, i)
        if up:  # skipping is allowed only at ascents
            walk(pos + 1, u, chosen, plus, minus)
        nxt = mult(spec, u, i)
        chosen.append(pos)
        (plus if up else minus).append(pos)
        walk(pos + 1, nxt, chosen, plus, minus)
        chosen.pop()
        (plus if up else minus).pop()

    walk(1, spec.identity_element(), [], [], [])
    results.sort(key=lambda s: s.positions)
    return results


def positive_subexpression(spec: CartanSpec, v, word: WeylWord) -> Subexpression:
    """The unique distinguished subexpression for ``v`` with empty J_-.

    Built right-to-left: take a position exactly when it shortens the running
    remainder.  Fails iff v is not below the word's element in Bruhat order.
    """
    v_el = element_of(spec, v) if _is_letters(v) else v
    letters = word.letters
    u = v_el
    positions = []
    for p in range(len(letters), 0, -1):
        i = letters[p - 1]
        if not is_ascent(spec, u, i):
            positions.append(p)
            u = mult(spec, u, i)
    if u != spec.identity_element():
        raise DomainError("no positive subexpression: v is not <= w in Bruhat order")
    positions.reverse()
    return Subexpression(word, tuple(positions), tuple(positions), ())


def permutation_of(spec: CartanSpec, target) -> tuple[int, ...]:
    """One-line permutation of {1..n+1} for a type-A element (s_i = (i, i+1))."""
    if not spec.label.startswith("A"):
        raise ConfigurationError("permutation model applies to type A only")
    letters = target if _is_letters(target) else some_reduced_word(spec, target)
    n = spec.rank
    perm = list(range(1, n + 2))
    for i in letters:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)
