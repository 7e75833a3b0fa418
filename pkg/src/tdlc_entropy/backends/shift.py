"""Shift backend: G is a full, Laurent or discrete power of a finite abelian
alphabet F, and the endomorphism is a shift by k composed with a coordinate
endomorphism of F.

Subgroups are *profiles*: an explicit window of subgroup values plus a
periodic pattern on each side, indexed by absolute residue so equality of
handles is equality of subgroups.  Limit subgroups along the dynamics are
computed in closed form by walking the defining recursion until it enters a
cycle, which also yields the stabilization certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm
from typing import Callable, Optional

from ..core import (
    BackendMismatchError,
    InvariantViolation,
    QuotientConstruction,
    RestrictionConstruction,
    TdlcSystem,
    UnresolvedError,
    UnsupportedSubgroupError,
)
from ..exact import INFINITE_INDEX, IndexValue

TAIL_MODES = ("compact", "laurent", "discrete")


class Alphabet:
    """A finite abelian group with its complete subgroup lattice."""

    def __init__(self, elements, add: Callable, name=""):
        self.elements = tuple(sorted(set(elements)))
        if not self.elements:
            raise ValueError("alphabet must be non-empty")
        self.name = name or f"F{len(self.elements)}"
        self._add = {(a, b): add(a, b) for a in self.elements for b in self.elements}
        zero = None
        for e in self.elements:
            if all(self._add[(e, x)] == x for x in self.elements):
                zero = e
                break
        if zero is None:
            raise ValueError("alphabet has no zero element")
        self.zero = zero
        for a in self.elements:
            for b in self.elements:
                if self._add[(a, b)] != self._add[(b, a)]:
                    raise ValueError("alphabet must be abelian")
        self.subgroup_sets = self._enumerate_subgroups()
        self._set_to_id = {s: i for i, s in enumerate(self.subgroup_sets)}
        self.trivial_id = self._set_to_id[frozenset({zero})]
        self.full_id = self._set_to_id[frozenset(self.elements)]
        n = len(self.subgroup_sets)
        self.meet = tuple(
            tuple(self._set_to_id[self.subgroup_sets[i] & self.subgroup_sets[j]] for j in range(n))
            for i in range(n)
        )
        self.join = tuple(
            tuple(
                self._set_to_id[self._closure(self.subgroup_sets[i] | self.subgroup_sets[j])]
                for j in range(n)
            )
            for i in range(n)
        )

    def add(self, a, b):
        return self._add[(a, b)]

    def _closure(self, subset) -> frozenset:
        els = set(subset) | {self.zero}
        frontier = list(els)
        while frontier:
            nxt = []
            for x in frontier:
                for y in list(els):
                    z = self._add[(x, y)]
                    if z not in els:
                        els.add(z)
                        nxt.append(z)
            frontier = nxt
        return frozenset(els)

    def _enumerate_subgroups(self):
        found = {frozenset({self.zero})}
        frontier = list(found)
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.elements:
                    if g not in h:
                        k = self._closure(h | {g})
                        if k not in found:
                            found.add(k)
                            nxt.append(k)
            frontier = nxt
        return tuple(sorted(found, key=lambda s: (len(s), tuple(sorted(s)))))

    def subgroup_id(self, members) -> int:
        key = frozenset(members)
        if key not in self._set_to_id:
            raise ValueError("element set is not a subgroup of the alphabet")
        return self._set_to_id[key]

    def order_of(self, sid: int) -> int:
        return len(self.subgroup_sets[sid])

    def contains_id(self, big: int, small: int) -> bool:
        return self.subgroup_sets[small] <= self.subgroup_sets[big]


def cyclic_alphabet(orders, name="") -> Alphabet:
    orders = tuple(int(n) for n in orders)
    if not orders or any(n < 1 for n in orders):
        raise ValueError("cyclic orders must be positive")
    elements = list(itertools.product(*[range(n) for n in orders]))

    def add(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, orders))

    label = "x".join(f"Z{n}" for n in orders)
    return Alphabet(elements, add, name=name or label)


class AlphabetHom:
    """An additive map between alphabets with subgroup image/preimage tables."""

    def __init__(self, domain: Alphabet, codomain: Alphabet, mapping: dict):
        self.domain = domain
        self.codomain = codomain
        self.mapping = dict(mapping)
        for a in domain.elements:
            for b in domain.elements:
                if self.mapping[domain.add(a, b)] != codomain.add(self.mapping[a], self.mapping[b]):
                    raise ValueError("mapping is not additive")
        self.image_id = tuple(
            codomain.subgroup_id(
                codomain._closure({self.mapping[x] for x in s})
            )
            for s in domain.subgroup_sets
        )
        self.preimage_id = tuple(
            domain.subgroup_id(
                {x for x in domain.elements if self.mapping[x] in codomain.subgroup_sets[j]}
            )
            for j in range(len(codomain.subgroup_sets))
        )

    @property
    def surjective(self) -> bool:
        return self.image_id[self.domain.full_id] == self.codomain.full_id

    @property
    def injective(self) -> bool:
        return self.preimage_id[self.codomain.trivial_id] == self.domain.trivial_id

    def compose(self, other: "AlphabetHom") -> "AlphabetHom":
        """self after other"""
        if other.codomain is not self.domain:
            raise BackendMismatchError("homomorphisms do not compose")
        return AlphabetHom(
            other.domain,
            self.codomain,
            {x: self.mapping[other.mapping[x]] for x in other.domain.elements},
        )


def identity_hom(alphabet: Alphabet) -> AlphabetHom:
    return AlphabetHom(alphabet, alphabet, {x: x for x in alphabet.elements})


def matrix_hom(alphabet: Alphabet, orders, matrix) -> AlphabetHom:
    """The additive self-map of a cyclic-orders alphabet given by an integer matrix."""
    r = len(orders)
    matrix = [list(map(int, row)) for row in matrix]
    if len(matrix) != r or any(len(row) != r for row in matrix):
        raise ValueError("sigma matrix has wrong shape")
    mapping = {}
    for x in alphabet.elements:
        mapping[x] = tuple(
            sum(matrix[j][i] * x[i] for i in range(r)) % orders[j] for j in range(r)
        )
    return AlphabetHom(alphabet, alphabet, mapping)


def _minimal_pattern(pat):
    pat = tuple(pat)
    n = len(pat)
    for q in range(1, n + 1):
        if n % q == 0 and all(pat[j] == pat[j % q] for j in range(n)):
            return pat[:q]
    return pat


@dataclass(frozen=True)
class Profile:
    """A profile subgroup: explicit window plus periodic tails.

    The value at position i is ``left[i % len(left)]`` for i < start,
    ``window[i - start]`` inside the window, and ``right[i % len(right)]``
    beyond it.  Values are subgroup ids in the model's alphabet lattice.
    """

    model: "ShiftProfileModel"
    left: tuple
    start: int
    window: tuple
    right: tuple

    @property
    def end(self) -> int:
        return self.start + len(self.window)

    def value_at(self, i: int) -> int:
        if i < self.start:
            return self.left[i % len(self.left)]
        if i < self.end:
            return self.window[i - self.start]
        return self.right[i % len(self.right)]

    @property
    def is_compact(self) -> bool:
        mode = self.model.tail_mode
        triv = self.model.alphabet.trivial_id
        if mode == "compact":
            return True
        if mode == "laurent":
            return self.left == (triv,)
        return self.left == (triv,) and self.right == (triv,)

    @property
    def is_open(self) -> bool:
        mode = self.model.tail_mode
        full = self.model.alphabet.full_id
        if mode == "compact":
            return self.left == (full,) and self.right == (full,)
        if mode == "laurent":
            return self.right == (full,)
        return True

    def describe(self) -> str:
        orders = [str(self.model.alphabet.order_of(v)) for v in self.window]
        lpat = ",".join(str(self.model.alphabet.order_of(v)) for v in self.left)
        rpat = ",".join(str(self.model.alphabet.order_of(v)) for v in self.right)
        return f"profile[({lpat})*|{self.start}:{','.join(orders)}|({rpat})*]"


@dataclass(frozen=True)
class ShiftEndo:
    """x maps to sigma applied coordinatewise after a shift by k."""

    model: "ShiftProfileModel"
    k: int
    sigma: AlphabetHom

    @property
    def kernel_trivial(self) -> bool:
        return self.sigma.injective

    @property
    def surjective(self) -> bool:
        return self.sigma.surjective


class ShiftProfileModel:
    """Profile arithmetic over F^Z, F((t)) or the discrete restricted power."""

    capabilities = frozenset(
        {"quotient", "restriction", "set_product", "tidy_below_certificate", "base_stabilizes"}
    )
    kind = "shift"

    def __init__(self, alphabet: Alphabet, tail_mode: str, name=""):
        if tail_mode not in TAIL_MODES:
            raise ValueError(f"tail_mode must be one of {TAIL_MODES}")
        self.alphabet = alphabet
        self.tail_mode = tail_mode
        self.name = name or f"{alphabet.name}^Z[{tail_mode}]"

    # -- construction ---------------------------------------------------------

    def make_profile(self, left, start, window, right) -> Profile:
        left = _minimal_pattern(left)
        right = _minimal_pattern(right)
        window = list(window)
        while window and window[0] == left[start % len(left)]:
            window.pop(0)
            start += 1
        while window and window[-1] == right[(start + len(window) - 1) % len(right)]:
            window.pop()
        if not window:
            if left == right:
                start = 0
            else:
                guard = lcm(len(left), len(right)) + 1
                while left[start % len(left)] == right[start % len(right)]:
                    start += 1
                    guard -= 1
                    if guard < 0:
                        raise InvariantViolation("distinct tail patterns never disagree")
        return Profile(self, left, start, tuple(window), right)

    def constant_profile(self, sid: int) -> Profile:
        return self.make_profile((sid,), 0, (), (sid,))

    def full_group(self) -> Profile:
        return self.constant_profile(self.alphabet.full_id)

    def trivial_subgroup(self) -> Profile:
        return self.constant_profile(self.alphabet.trivial_id)

    def window_profile(self, values: dict, left_id: int, right_id: int, fill=None) -> Profile:
        """Profile with explicit subgroup values on finitely many coordinates.

        Gaps inside the window span take ``fill``, which must be given when
        the specified coordinates are not contiguous.
        """
        if not values:
            return self.make_profile((left_id,), 0, (), (right_id,))
        lo, hi = min(values), max(values) + 1
        window = []
        for i in range(lo, hi):
            if i in values:
                window.append(values[i])
            elif fill is not None:
                window.append(fill)
            else:
                raise ValueError(f"no value for coordinate {i} and no fill given")
        return self.make_profile((left_id,), lo, window, (right_id,))

    def base_element(self, k: int) -> Profile:
        alpha = self.alphabet
        if self.tail_mode == "compact":
            return self.make_profile(
                (alpha.full_id,), -k, (alpha.trivial_id,) * (2 * k + 1), (alpha.full_id,)
            )
        if self.tail_mode == "laurent":
            return self.make_profile((alpha.trivial_id,), k, (), (alpha.full_id,))
        return self.trivial_subgroup()

    def endo(self, k: int, sigma: Optional[AlphabetHom] = None) -> ShiftEndo:
        if sigma is None:
            sigma = identity_hom(self.alphabet)
        if sigma.domain is not self.alphabet or sigma.codomain is not self.alphabet:
            raise BackendMismatchError("sigma must be an endomorphism of the alphabet")
        return ShiftEndo(self, int(k), sigma)

    def identity_endo(self) -> ShiftEndo:
        return self.endo(0)

    def endo_power(self, phi: ShiftEndo, n: int) -> ShiftEndo:
        sigma = identity_hom(self.alphabet)
        for _ in range(n):
            sigma = phi.sigma.compose(sigma)
        return ShiftEndo(self, phi.k * n, sigma)

    def kernel_handle(self, phi: ShiftEndo) -> Profile:
        return self.constant_profile(phi.sigma.preimage_id[self.alphabet.trivial_id])

    def _check_same(self, *handles):
        for h in handles:
            if h.model is not self:
                raise BackendMismatchError("handle belongs to a different shift group")

    # -- pointwise operations ----------------------------------------------------

    def _pointwise(self, U: Profile, V: Profile, table) -> Profile:
        lper = lcm(len(U.left), len(V.left))
        rper = lcm(len(U.right), len(V.right))
        lo = min(U.start, V.start)
        hi = max(U.end, V.end)
        left = tuple(table[U.left[r % len(U.left)]][V.left[r % len(V.left)]] for r in range(lper))
        right = tuple(
            table[U.right[r % len(U.right)]][V.right[r % len(V.right)]] for r in range(rper)
        )
        window = tuple(table[U.value_at(i)][V.value_at(i)] for i in range(lo, hi))
        return self.make_profile(left, lo, window, right)

    def intersect(self, U: Profile, V: Profile) -> Profile:
        self._check_same(U, V)
        return self._pointwise(U, V, self.alphabet.meet)

    def set_product(self, U: Profile, V: Profile) -> Profile:
        self._check_same(U, V)
        return self._pointwise(U, V, self.alphabet.join)

    def _mapped(self, U: Profile, shift: int, value_map) -> Profile:
        """Profile with value'(i) = value_map[value(i + shift)]."""
        left = tuple(value_map[U.left[(r + shift) % len(U.left)]] for r in range(len(U.left)))
        right = tuple(value_map[U.right[(r + shift) % len(U.right)]] for r in range(len(U.right)))
        window = tuple(value_map[v] for v in U.window)
        return self.make_profile(left, U.start - shift, window, right)

    def image(self, phi: ShiftEndo, U: Profile) -> Profile:
        self._check_same(U)
        return self._mapped(U, phi.k, phi.sigma.image_id)

    def preimage(self, phi: ShiftEndo, U: Profile) -> Profile:
        self._check_same(U)
        return self._mapped(U, -phi.k, phi.sigma.preimage_id)

    def translate(self, U: Profile, t: int) -> Profile:
        """The shift automorphism by t applied to the handle."""
        ident = tuple(range(len(self.alphabet.subgroup_sets)))
        return self._mapped(U, -t, ident)

    # -- containment and index -----------------------------------------------------

    def _probe_positions(self, U: Profile, V: Profile):
        lper = lcm(len(U.left), len(V.left))
        rper = lcm(len(U.right), len(V.right))
        lo = min(U.start, V.start)
        hi = max(U.end, V.end)
        return range(lo - lper, hi + rper)

    def contains(self, U: Profile, V: Profile) -> bool:
        """V <= U, checked pointwise over a representative range."""
        self._check_same(U, V)
        alpha = self.alphabet
        return all(
            alpha.contains_id(U.value_at(i), V.value_at(i)) for i in self._probe_positions(U, V)
        )

    def index(self, V: Profile, U: Profile) -> IndexValue:
        """Exact [U:V]; infinite unless the tail patterns agree."""
        self._check_same(U, V)
        if not self.contains(U, V):
            raise ValueError("index requires V <= U")
        if U.left != V.left or U.right != V.right:
            return INFINITE_INDEX
        alpha = self.alphabet
        total = 1
        lo = min(U.start, V.start)
        hi = max(U.end, V.end)
        for i in range(lo, hi):
            total *= alpha.order_of(U.value_at(i)) // alpha.order_of(V.value_at(i))
        return IndexValue(total)

    # -- limit profiles --------------------------------------------------------------

    def _mirror(self, U: Profile) -> Profile:
        lper, rper = len(U.left), len(U.right)
        new_left = tuple(U.right[(-r) % rper] for r in range(rper))
        new_right = tuple(U.left[(-r) % lper] for r in range(lper))
        return self.make_profile(new_left, 1 - U.end, tuple(reversed(U.window)), new_right)

    def limit_profile(self, U: Profile, step: int, value_map, op_table):
        """Solve L(i) = op(U(i), value_map[L(i + step)]) by closed form.

        This is the pointwise limit of iterating the recursion from U; the
        walk detects the cycle its values enter, so the result carries exact
        periodic tails.  Returns (profile, info) where info records the cycle
        for stabilization certificates.
        """
        if step == 0:
            def fix(v, coeff):
                seen = set()
                while v not in seen:
                    seen.add(v)
                    v2 = op_table[coeff][value_map[v]]
                    if v2 == v:
                        return v
                    v = v2
                raise InvariantViolation("pointwise recursion oscillated")

            left = tuple(fix(v, v) for v in U.left)
            right = tuple(fix(v, v) for v in U.right)
            window = tuple(fix(U.window[i], U.window[i]) for i in range(len(U.window)))
            return (
                self.make_profile(left, U.start, window, right),
                {"kind": "pointwise", "cycle_len": 1, "cycle_entry": U.end, "steps_per_cycle": 1},
            )
        if step < 0:
            mirrored, info = self.limit_profile(self._mirror(U), -step, value_map, op_table)
            out = self._mirror(mirrored)
            info = dict(info)
            info["cycle_entry"] = -info["cycle_entry"]
            info["drift_side"] = "right" if info.get("drift_side") == "left" else "left"
            return out, info

        # step > 0: references increase, the settled side is +infinity.
        rper = lcm(len(U.right), step)
        pat = [U.right[r % len(U.right)] for r in range(rper)]
        guard = len(self.alphabet.subgroup_sets) * rper + 2
        while True:
            nxt = [
                op_table[U.right[r % len(U.right)]][value_map[pat[(r + step) % rper]]]
                for r in range(rper)
            ]
            if nxt == pat:
                break
            pat = nxt
            guard -= 1
            if guard < 0:
                raise InvariantViolation("tail recursion failed to stabilize")
        vals = {}

        def get(i):
            if i >= U.end:
                return pat[i % rper]
            return vals[i]

        for i in range(U.end - 1, U.start - 1, -1):
            vals[i] = op_table[U.value_at(i)][value_map[get(i + step)]]
        mper = lcm(len(U.left), step)
        seen = {}
        i = U.start - 1
        cycle_entry = None
        cycle_len = None
        bound = min(len(self.alphabet.subgroup_sets) ** step * mper * 4, 200000) + U.end - U.start + 8
        for _ in range(bound):
            state = (i % mper, tuple(get(i + 1 + t) for t in range(step)))
            if state in seen:
                prev = seen[state]
                cycle_len = prev - i
                cycle_entry = prev
                break
            seen[state] = i
            vals[i] = op_table[U.value_at(i)][value_map[get(i + step)]]
            i -= 1
        if cycle_entry is None:
            raise UnresolvedError("left walk exceeded its cycle-detection bound")
        base_pos = cycle_entry - cycle_len + 1
        left = tuple(get(base_pos + ((r - base_pos) % cycle_len)) for r in range(cycle_len))
        window = tuple(get(j) for j in range(cycle_entry + 1, U.end))
        out = self.make_profile(left, cycle_entry + 1, window, pat)
        info = {
            "kind": "walk",
            "cycle_entry": cycle_entry,
            "cycle_len": cycle_len,
            "steps_per_cycle": cycle_len // gcd(cycle_len, step),
            "drift_side": "left",
        }
        return out, info

    # -- dynamics hooks -----------------------------------------------------------------

    def plus_group_impl(self, phi: ShiftEndo, U: Profile, probe: int):
        current = U
        prefix = [U]
        for n in range(min(probe, 8)):
            nxt = self.intersect(U, self.image(phi, current))
            if nxt == current:
                return current, "fixpoint", n, {"fixpoint_at": n}
            current = nxt
            prefix.append(current)
        limit, info = self.limit_profile(U, phi.k, phi.sigma.image_id, self.alphabet.meet)
        if limit != self.intersect(U, self.image(phi, limit)):
            raise InvariantViolation("closed-form forward core is not a fixed point")
        for h in prefix:
            if not self.contains(h, limit):
                raise InvariantViolation("closed-form forward core escaped an iterate")
        return limit, "structural", len(prefix), dict(info)

    def minus_group_impl(self, phi: ShiftEndo, U: Profile, probe: int):
        current = U
        for n in range(min(probe, 8)):
            nxt = self.intersect(current, self.preimage(phi, current))
            if nxt == current:
                return current, {"method": "fixpoint", "fixpoint_at": n}
            current = nxt
        limit, info = self.limit_profile(U, -phi.k, phi.sigma.preimage_id, self.alphabet.meet)
        if limit != self.intersect(U, self.preimage(phi, limit)):
            raise InvariantViolation("closed-form cotrajectory is not a fixed point")
        cert = dict(info)
        cert["method"] = "structural"
        return limit, cert

    def _diff_positions(self, U: Profile, V: Profile):
        if U.left != V.left or U.right != V.right:
            return None
        lo = min(U.start, V.start)
        hi = max(U.end, V.end)
        return tuple(i for i in range(lo, hi) if U.value_at(i) != V.value_at(i))

    def alpha_stabilization(self, phi, U, minus_handles, alphas, n_max):
        """Certify the alpha plateau via the closed-form cotrajectory cycle.

        Differences between consecutive cotrajectory terms must translate by
        the shift inside the periodic regime of the closed form; a plateau
        covering a full cycle of phases then pins the value forever, since
        alpha is non-increasing.
        """
        for n in range(len(minus_handles) - 1):
            if minus_handles[n + 1] == minus_handles[n]:
                if all(a == 1 for a in alphas[n:]):
                    return n, {"criterion": "cotrajectory fixpoint", "fixpoint_at": n}
                raise InvariantViolation("alpha is not 1 beyond a cotrajectory fixpoint")
        if phi.k == 0:
            return None, {"criterion": "cotrajectory fixpoint", "fixpoint_at": None}
        _, info = self.limit_profile(U, -phi.k, phi.sigma.preimage_id, self.alphabet.meet)
        q = max(info.get("steps_per_cycle", 1), 1)
        need = q + 1
        n_star = None
        for n in range(len(alphas)):
            if all(alphas[m] == alphas[n] for m in range(n, len(alphas))):
                n_star = n
                break
        if n_star is None or len(alphas) - n_star < need + 1:
            return None, {"criterion": "cotrajectory cycle", "steps_per_cycle": q}
        # translation evidence: consecutive difference sets move by exactly k
        # per step once the walk is inside its periodic regime
        start_m = max(n_star, len(minus_handles) - need - 2, 1)
        for m in range(start_m, len(minus_handles) - 1):
            diffs = self._diff_positions(minus_handles[m], minus_handles[m + 1])
            prev = self._diff_positions(minus_handles[m - 1], minus_handles[m])
            if diffs is None or prev is None:
                raise InvariantViolation("cotrajectory tails changed along the chain")
            if tuple(p + phi.k for p in prev) != diffs:
                return None, {"criterion": "cotrajectory cycle", "reason": "diffs not translating"}
        return n_star, {
            "criterion": "cotrajectory cycle",
            "steps_per_cycle": q,
            "cycle_entry": info["cycle_entry"],
        }

    def plus_plus_analysis(self, phi, u_plus: Profile, probe: int):
        indices = []
        chain = [u_plus]
        current = u_plus
        stabilized = None
        for n in range(probe + 1):
            nxt = self.image(phi, current)
            if not self.contains(nxt, current):
                raise InvariantViolation("phi^n U+ is not increasing")
            indices.append(self.index(current, nxt))
            if nxt == current and stabilized is None:
                stabilized = n
            current = nxt
            chain.append(current)
        if stabilized is not None:
            return {
                "closed": True,
                "handle": chain[stabilized],
                "indices": indices,
                "certificate": {"method": "image chain stabilized", "steps": stabilized},
            }
        limit, info = self.limit_profile(u_plus, phi.k, phi.sigma.image_id, self.alphabet.join)
        drift = info.get("drift_side", "left")
        alpha = self.alphabet
        ambient_tail = (
            u_plus.model.tail_mode == "compact"
            or (u_plus.model.tail_mode == "laurent" and drift == "right")
        )
        if not ambient_tail:
            # drifting deficiencies point at a trivial ambient tail: every
            # member of the limit profile is reached at a finite power.
            return {
                "closed": True,
                "handle": limit,
                "indices": indices,
                "certificate": {
                    "method": "drift into trivial ambient tail",
                    "drift_side": drift,
                },
            }
        # tail deficiency: if the sigma-orbit of the drifting tail pattern of
        # the last iterate never matches the limit's pattern, every later
        # iterate stays short at infinitely many coordinates, so the union is
        # a proper dense subgroup of the limit profile.
        last = chain[-1]
        pat = last.left if drift == "left" else last.right
        target = limit.left if drift == "left" else limit.right
        period = lcm(len(pat), len(target))
        img = phi.sigma.image_id
        seen = set()
        cur = tuple(pat[r % len(pat)] for r in range(period))
        goal = tuple(target[r % len(target)] for r in range(period))
        while cur not in seen:
            if cur == goal:
                raise UnresolvedError("iterate tails eventually reach the limit pattern")
            seen.add(cur)
            cur = tuple(img[cur[(r + phi.k) % period]] for r in range(period))
        if self._diff_positions(last, limit) == ():
            raise UnresolvedError("drift did not leave a visible deficiency at the probe")
        return {
            "closed": False,
            "handle": limit,
            "indices": indices,
            "certificate": {
                "method": "tail deficiency drifting toward a full ambient tail",
                "drift_side": drift,
            },
        }

    def entropy_base_certificate(self, phi, probed):
        values = {entry[2] for entry in probed}
        if len(values) == 1:
            return True, "base elements are shift translates with matching tail patterns"
        return False, "local entropy varied along the base probe"

    def scale_candidates(self, phi, probe):
        out = []
        if self.tail_mode == "compact":
            out.append(self.full_group())
        if self.tail_mode == "discrete":
            out.append(self.trivial_subgroup())
        return out

    def nub_analysis(self, phi, minimizing, resolution, scale_value=None):
        if not minimizing:
            return None, False, "no minimizing subgroup found in the probe"
        inter = minimizing[0]
        for u in minimizing[1:]:
            inter = self.intersect(inter, u)
        if self.tail_mode == "compact" and minimizing == [self.full_group()]:
            return (
                self.full_group(),
                True,
                "an open minimizing profile has shift-stable core, hence is the whole group",
            )
        if self.tail_mode == "discrete":
            return inter, True, "discrete group: the found minimizing family is exact"
        if phi.k != 0:
            # translate chain: if the shifted witness is still minimizing and
            # smaller, the chain of translates intersects to its pointwise
            # tail limit; a trivial limit pins the result exactly.
            witness = inter
            step = phi.k
            shifted = self.translate(witness, step)
            if self.contains(witness, shifted) and shifted != witness:
                img = self.image(phi, shifted)
                val = self.index(self.intersect(shifted, img), img)
                if scale_value is None or val == IndexValue(scale_value):
                    ident = tuple(range(len(self.alphabet.subgroup_sets)))
                    tail_limit, _ = self.limit_profile(witness, -step, ident, self.alphabet.meet)
                    if tail_limit == self.trivial_subgroup():
                        return (
                            tail_limit,
                            True,
                            "translate chain of the witness is minimizing and meets to 1",
                        )
        return inter, False, "probed minimizing family only"

    # -- specs, quotient, restriction ---------------------------------------------------

    def subgroup_flags(self, phi: ShiftEndo, H: Profile) -> dict:
        self._check_same(H)
        img = self.image(phi, H)
        return {
            "normal": True,
            "compact": H.is_compact,
            "phi_invariant": self.contains(H, img),
            "phi_stable": img == H,
            "contains_kernel": self.contains(H, self.kernel_handle(phi)),
        }

    def _constant_value(self, H: Profile) -> Optional[int]:
        if H.left == H.right and len(H.left) == 1 and not H.window:
            return H.left[0]
        return None

    def quotient(self, phi: ShiftEndo, H: Profile) -> QuotientConstruction:
        self._check_same(H)
        f0 = self._constant_value(H)
        if f0 is None:
            raise UnsupportedSubgroupError(
                "can only quotient by a constant-profile subgroup in this backend"
            )
        alpha = self.alphabet
        f0set = alpha.subgroup_sets[f0]
        cosets = {}
        for x in alpha.elements:
            coset = frozenset(alpha.add(x, h) for h in f0set)
            cosets[x] = min(coset)
        reps = sorted(set(cosets.values()))
        qalpha = Alphabet(reps, lambda a, b: cosets[alpha.add(a, b)], name=f"{alpha.name}/F0")
        pi = AlphabetHom(alpha, qalpha, dict(cosets))
        qsigma = AlphabetHom(
            qalpha, qalpha, {r: cosets[phi.sigma.mapping[r]] for r in reps}
        )
        qmodel = ShiftProfileModel(qalpha, self.tail_mode, name=f"{self.name}/H")
        qendo = ShiftEndo(qmodel, phi.k, qsigma)
        system = TdlcSystem(qmodel, qendo, name=f"{self.name}/H")

        def project(U: Profile) -> Profile:
            m = pi.image_id
            return qmodel.make_profile(
                tuple(m[v] for v in U.left),
                U.start,
                tuple(m[v] for v in U.window),
                tuple(m[v] for v in U.right),
            )

        return QuotientConstruction(system=system, project=project)

    def restriction(self, phi: ShiftEndo, H: Profile) -> RestrictionConstruction:
        self._check_same(H)
        f0 = self._constant_value(H)
        if f0 is None:
            raise UnsupportedSubgroupError(
                "can only restrict to a constant-profile subgroup in this backend"
            )
        alpha = self.alphabet
        f0set = alpha.subgroup_sets[f0]
        salpha = Alphabet(sorted(f0set), alpha.add, name=f"{alpha.name}|F0")
        if any(phi.sigma.mapping[x] not in f0set for x in f0set):
            raise UnsupportedSubgroupError("H is not carried into itself")
        ssigma = AlphabetHom(salpha, salpha, {x: phi.sigma.mapping[x] for x in salpha.elements})
        smodel = ShiftProfileModel(salpha, self.tail_mode, name=f"{self.name}|H")
        sendo = ShiftEndo(smodel, phi.k, ssigma)
        system = TdlcSystem(smodel, sendo, name=f"{self.name}|H")
        up_id = tuple(
            alpha.subgroup_id(salpha.subgroup_sets[j]) for j in range(len(salpha.subgroup_sets))
        )
        down_id = tuple(
            salpha.subgroup_id(alpha.subgroup_sets[j] & f0set)
            for j in range(len(alpha.subgroup_sets))
        )

        def embed(U: Profile) -> Profile:
            return self.make_profile(
                tuple(up_id[v] for v in U.left),
                U.start,
                tuple(up_id[v] for v in U.window),
                tuple(up_id[v] for v in U.right),
            )

        def restrict_handle(U: Profile) -> Profile:
            return smodel.make_profile(
                tuple(down_id[v] for v in U.left),
                U.start,
                tuple(down_id[v] for v in U.window),
                tuple(down_id[v] for v in U.right),
            )

        return RestrictionConstruction(system=system, embed=embed, restrict_handle=restrict_handle)
