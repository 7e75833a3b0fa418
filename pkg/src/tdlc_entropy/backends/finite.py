"""Finite group backend.

Groups are given by a multiplication table that is verified at load time.
Every subgroup is compact and open, the complete subgroup list is computed
once, and all operations are plain element enumeration, which makes this
backend the oracle the other backends are cross-checked against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from ..core import (
    BackendMismatchError,
    CapabilityError,
    InvariantViolation,
    QuotientConstruction,
    RestrictionConstruction,
    TdlcSystem,
    UnsupportedSubgroupError,
)
from ..exact import IndexValue

DEFAULT_ORDER_BOUND = 256


@dataclass(frozen=True)
class FiniteSubgroup:
    """A subgroup as a sorted tuple of element indices (canonical form)."""

    model: "FiniteGroupModel"
    members: tuple[int, ...]

    @property
    def is_open(self) -> bool:
        return True

    @property
    def is_compact(self) -> bool:
        return True

    def __len__(self):
        return len(self.members)

    def describe(self) -> str:
        names = self.model.names
        if len(self.members) == len(names):
            return "G"
        return "{" + ",".join(names[i] for i in self.members) + "}"


@dataclass(frozen=True)
class FiniteEndo:
    """An endomorphism as the tuple of images, verified multiplicative."""

    model: "FiniteGroupModel"
    mapping: tuple[int, ...]

    @property
    def kernel_trivial(self) -> bool:
        return self.mapping.count(self.model.identity) == 1

    @property
    def surjective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]


class FiniteGroupModel:
    """A finite group with its complete subgroup lattice precomputed."""

    capabilities = frozenset(
        {"quotient", "restriction", "set_product", "tidy_below_certificate", "base_stabilizes"}
    )
    kind = "finite"

    def __init__(self, table, names=None, name="G", order_bound=DEFAULT_ORDER_BOUND):
        table = tuple(tuple(row) for row in table)
        n = len(table)
        if n == 0 or n > order_bound:
            raise ValueError(f"group order must be in 1..{order_bound}, got {n}")
        if any(len(row) != n for row in table):
            raise ValueError("multiplication table must be square")
        self.table = table
        self.order = n
        self.name = name
        self.names = tuple(names) if names is not None else tuple(f"g{i}" for i in range(n))
        if len(self.names) != n:
            raise ValueError("wrong number of element names")
        self.identity = self._find_identity()
        self.inverse = self._find_inverses()
        self._verify_associativity()
        self._subgroups = self._enumerate_subgroups()
        self._endos: Optional[tuple[FiniteEndo, ...]] = None

    # -- construction checks ------------------------------------------------

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x == self.table[x][e] for x in range(self.order)):
                return e
        raise ValueError("table has no identity element")

    def _find_inverses(self):
        inv = [None] * self.order
        for x in range(self.order):
            for y in range(self.order):
                if self.table[x][y] == self.identity and self.table[y][x] == self.identity:
                    inv[x] = y
                    break
            if inv[x] is None:
                raise ValueError(f"element {x} has no inverse")
        return tuple(inv)

    def _verify_associativity(self):
        t = self.table
        for a in range(self.order):
            for b in range(self.order):
                tab = t[a][b]
                for c in range(self.order):
                    if t[tab][c] != t[a][t[b][c]]:
                        raise ValueError("multiplication table is not associative")

    # -- element algebra ----------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conjugate(self, x: int, g: int) -> int:
        """g^{-1} x g"""
        return self.mul(self.mul(self.inverse[g], x), g)

    def closure(self, gens: Iterable[int]) -> frozenset:
        els = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        for g in gens:
            if g not in els:
                els.add(g)
                frontier.append(g)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in els:
                        els.add(y)
                        nxt.append(y)
                    y = self.table[g][x]
                    if y not in els:
                        els.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(els)

    def _enumerate_subgroups(self):
        found = {frozenset({self.identity})}
        frontier = list(found)
        while frontier:
            nxt = []
            for h in frontier:
                for g in range(self.order):
                    if g not in h:
                        k = self.closure(set(h) | {g})
                        if k not in found:
                            found.add(k)
                            nxt.append(k)
            frontier = nxt
        ordered = sorted(found, key=lambda s: (len(s), tuple(sorted(s))))
        return tuple(self.subgroup(s) for s in ordered)

    # -- handles ------------------------------------------------------------

    def subgroup(self, members: Iterable[int]) -> FiniteSubgroup:
        mem = tuple(sorted(set(members)))
        for a in mem:
            for b in mem:
                if self.table[a][b] not in set(mem):
                    raise ValueError("element set is not closed under multiplication")
            if self.inverse[a] not in set(mem):
                raise ValueError("element set is not closed under inverses")
        return FiniteSubgroup(self, mem)

    def generated_subgroup(self, gens: Iterable[int]) -> FiniteSubgroup:
        return FiniteSubgroup(self, tuple(sorted(self.closure(gens))))

    def full_group(self) -> FiniteSubgroup:
        return FiniteSubgroup(self, tuple(range(self.order)))

    def trivial_subgroup(self) -> FiniteSubgroup:
        return FiniteSubgroup(self, (self.identity,))

    def all_subgroups(self) -> tuple[FiniteSubgroup, ...]:
        """Complete, duplicate-free subgroup list (verified complete by closure)."""
        return self._subgroups

    # -- endomorphisms ------------------------------------------------------

    def endo(self, mapping: Iterable[int]) -> FiniteEndo:
        mapping = tuple(mapping)
        if len(mapping) != self.order:
            raise ValueError("endomorphism mapping has wrong length")
        for a in range(self.order):
            for b in range(self.order):
                if mapping[self.table[a][b]] != self.table[mapping[a]][mapping[b]]:
                    raise ValueError("mapping is not multiplicative")
        return FiniteEndo(self, mapping)

    def identity_endo(self) -> FiniteEndo:
        return FiniteEndo(self, tuple(range(self.order)))

    def generating_sequence(self) -> tuple[int, ...]:
        gens: list[int] = []
        span = frozenset({self.identity})
        for g in range(self.order):
            if g not in span:
                gens.append(g)
                span = self.closure(gens)
                if len(span) == self.order:
                    break
        return tuple(gens)

    def _extend_hom(self, gens, images) -> Optional[tuple[int, ...]]:
        known = {self.identity: self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                fx = known[x]
                for g, img in zip(gens, images):
                    y = self.table[x][g]
                    fy = self.table[fx][img]
                    if y in known:
                        if known[y] != fy:
                            return None
                    else:
                        known[y] = fy
                        nxt.append(y)
            frontier = nxt
        if len(known) != self.order:
            return None
        return tuple(known[x] for x in range(self.order))

    def endomorphisms(self) -> tuple[FiniteEndo, ...]:
        """All endomorphisms, enumerated from generator images by closure."""
        if self._endos is None:
            gens = self.generating_sequence()
            maps = set()
            if not gens:
                maps.add((self.identity,) * self.order)
            for images in itertools.product(range(self.order), repeat=len(gens)):
                hom = self._extend_hom(gens, images)
                if hom is not None:
                    maps.add(hom)
            self._endos = tuple(FiniteEndo(self, m) for m in sorted(maps))
        return self._endos

    def endo_power(self, phi: FiniteEndo, n: int) -> FiniteEndo:
        mapping = tuple(range(self.order))
        for _ in range(n):
            mapping = tuple(phi.mapping[x] for x in mapping)
        return FiniteEndo(self, mapping)

    def kernel_handle(self, phi: FiniteEndo) -> FiniteSubgroup:
        return FiniteSubgroup(
            self, tuple(x for x in range(self.order) if phi.mapping[x] == self.identity)
        )

    # -- subgroup operations -------------------------------------------------

    def _check_same(self, *handles):
        for h in handles:
            if h.model is not self:
                raise BackendMismatchError("handle belongs to a different group")

    def intersect(self, U: FiniteSubgroup, V: FiniteSubgroup) -> FiniteSubgroup:
        self._check_same(U, V)
        return FiniteSubgroup(self, tuple(sorted(set(U.members) & set(V.members))))

    def set_mul(self, A: Iterable[int], B: Iterable[int]) -> frozenset:
        return frozenset(self.table[a][b] for a in A for b in B)

    def set_product(self, U: FiniteSubgroup, V: FiniteSubgroup) -> FiniteSubgroup:
        self._check_same(U, V)
        uv = self.set_mul(U.members, V.members)
        vu = self.set_mul(V.members, U.members)
        if uv != vu:
            raise CapabilityError("UV != VU, the set product is not a subgroup here")
        return FiniteSubgroup(self, tuple(sorted(uv)))

    def image(self, phi: FiniteEndo, U: FiniteSubgroup) -> FiniteSubgroup:
        self._check_same(U)
        return FiniteSubgroup(self, tuple(sorted({phi.mapping[x] for x in U.members})))

    def preimage(self, phi: FiniteEndo, U: FiniteSubgroup) -> FiniteSubgroup:
        self._check_same(U)
        mem = set(U.members)
        return FiniteSubgroup(
            self, tuple(x for x in range(self.order) if phi.mapping[x] in mem)
        )

    def contains(self, U: FiniteSubgroup, V: FiniteSubgroup) -> bool:
        """V <= U"""
        self._check_same(U, V)
        return set(V.members) <= set(U.members)

    def index(self, V: FiniteSubgroup, U: FiniteSubgroup) -> IndexValue:
        """Exact [U:V]; requires V <= U."""
        self._check_same(U, V)
        if not set(V.members) <= set(U.members):
            raise ValueError("index requires V <= U")
        return IndexValue(len(U.members) // len(V.members))

    def coset_count(self, S: Iterable[int], H: FiniteSubgroup) -> int:
        """Generalized index [SH:H] = number of distinct cosets sH, s in S."""
        hset = tuple(H.members)
        return len({frozenset(self.table[s][h] for h in hset) for s in S})

    def base_element(self, k: int) -> FiniteSubgroup:
        return self.full_group() if k == 0 else self.trivial_subgroup()

    def normalizer(self, U: FiniteSubgroup) -> FiniteSubgroup:
        mem = set(U.members)
        keep = [
            g
            for g in range(self.order)
            if {self.conjugate(x, g) for x in mem} == mem
        ]
        return FiniteSubgroup(self, tuple(sorted(keep)))

    def normalized_core(self, K: FiniteSubgroup, C: FiniteSubgroup) -> FiniteSubgroup:
        """L = the intersection of the C-conjugates of K; C normalizes L, L <= K."""
        self._check_same(K, C)
        core = set(K.members)
        for x in C.members:
            core &= {self.conjugate(k, x) for k in K.members}
        L = FiniteSubgroup(self, tuple(sorted(core)))
        if not self.contains(K, L):
            raise InvariantViolation("normalized core is not inside K")
        if not set(C.members) <= set(self.normalizer(L).members):
            raise InvariantViolation("C does not normalize the core")
        return L

    # -- subgroup specs, quotients, restrictions -----------------------------

    def subgroup_flags(self, phi: FiniteEndo, H: FiniteSubgroup) -> dict:
        self._check_same(H)
        mem = set(H.members)
        img = {phi.mapping[x] for x in mem}
        normal = all({self.conjugate(x, g) for x in mem} == mem for g in range(self.order))
        ker = {x for x in range(self.order) if phi.mapping[x] == self.identity}
        return {
            "normal": normal,
            "compact": True,
            "phi_invariant": img <= mem,
            "phi_stable": img == mem,
            "contains_kernel": ker <= mem,
        }

    def quotient(self, phi: FiniteEndo, H: FiniteSubgroup) -> QuotientConstruction:
        self._check_same(H)
        flags = self.subgroup_flags(phi, H)
        if not flags["normal"]:
            raise UnsupportedSubgroupError(
                "finite quotient needs a normal subgroup; compact non-normal "
                "subgroups are handled through the neighborhood-base route"
            )
        if not flags["phi_invariant"]:
            raise UnsupportedSubgroupError("H is not phi-invariant")
        hset = set(H.members)
        coset_of = {}
        reps = []
        for x in range(self.order):
            if x in coset_of:
                continue
            coset = frozenset(self.table[x][h] for h in hset)
            rep = min(coset)
            reps.append(rep)
            for y in coset:
                coset_of[y] = rep
        reps.sort()
        rep_index = {r: i for i, r in enumerate(reps)}
        table = [
            [rep_index[coset_of[self.table[a][b]]] for b in reps] for a in reps
        ]
        qnames = tuple(f"{self.names[r]}H" for r in reps)
        qmodel = FiniteGroupModel(table, names=qnames, name=f"{self.name}/H")
        qmap = []
        for r in reps:
            qmap.append(rep_index[coset_of[phi.mapping[r]]])
        # well-definedness across each whole coset
        for x in range(self.order):
            if rep_index[coset_of[phi.mapping[x]]] != qmap[rep_index[coset_of[x]]]:
                raise InvariantViolation("induced map is not well defined on cosets")
        qendo = qmodel.endo(qmap)
        system = TdlcSystem(qmodel, qendo, name=f"{self.name}/H")

        def project(U: FiniteSubgroup) -> FiniteSubgroup:
            return qmodel.subgroup({rep_index[coset_of[x]] for x in U.members})

        return QuotientConstruction(system=system, project=project)

    def restriction(self, phi: FiniteEndo, H: FiniteSubgroup) -> RestrictionConstruction:
        self._check_same(H)
        if not self.subgroup_flags(phi, H)["phi_invariant"]:
            raise UnsupportedSubgroupError("H is not phi-invariant")
        elements = list(H.members)
        pos = {x: i for i, x in enumerate(elements)}
        table = [[pos[self.table[a][b]] for b in elements] for a in elements]
        submodel = FiniteGroupModel(
            table, names=tuple(self.names[x] for x in elements), name=f"{self.name}|H"
        )
        sendo = submodel.endo(tuple(pos[phi.mapping[x]] for x in elements))
        system = TdlcSystem(submodel, sendo, name=f"{self.name}|H")

        def embed(U: FiniteSubgroup) -> FiniteSubgroup:
            return self.subgroup(elements[i] for i in U.members)

        def restrict_handle(U: FiniteSubgroup) -> FiniteSubgroup:
            return submodel.subgroup(pos[x] for x in U.members if x in pos)

        return RestrictionConstruction(system=system, embed=embed, restrict_handle=restrict_handle)

    # -- dynamics hooks -------------------------------------------------------

    def plus_group_impl(self, phi: FiniteEndo, U: FiniteSubgroup, probe: int):
        current = U
        for n in range(self.order + 1):
            nxt = self.intersect(U, self.image(phi, current))
            if nxt == current:
                return current, "fixpoint", n, {"fixpoint_at": n}
            current = nxt
        raise InvariantViolation("decreasing chain did not stabilize in a finite group")

    def minus_group_impl(self, phi: FiniteEndo, U: FiniteSubgroup, probe: int):
        current = U
        for n in range(self.order + 1):
            nxt = self.intersect(current, self.preimage(phi, current))
            if nxt == current:
                return current, {"method": "fixpoint", "fixpoint_at": n}
            current = nxt
        raise InvariantViolation("decreasing chain did not stabilize in a finite group")

    def alpha_stabilization(self, phi, U, minus_handles, alphas, n_max):
        """Certified stabilization index: the cotrajectory chain reaches its
        exact fixpoint, after which every alpha equals 1."""
        for n in range(len(minus_handles) - 1):
            if minus_handles[n + 1] == minus_handles[n]:
                if all(a == 1 for a in alphas[n:]):
                    return n, {"criterion": "cotrajectory fixpoint", "fixpoint_at": n}
                raise InvariantViolation("alpha is not 1 beyond a cotrajectory fixpoint")
        return None, {"criterion": "cotrajectory fixpoint", "fixpoint_at": None}

    def plus_plus_analysis(self, phi, u_plus: FiniteSubgroup, probe: int):
        """Increasing image chain in a finite group always stabilizes; its
        union is that stable subgroup, hence closed."""
        chain = [u_plus]
        indices = []
        current = u_plus
        for _ in range(self.order + 1):
            nxt = self.image(phi, current)
            indices.append(self.index(current, nxt) if self.contains(nxt, current) else None)
            if indices[-1] is None:
                raise InvariantViolation("phi^n U+ is not increasing")
            if nxt == current:
                while len(indices) < probe + 1:
                    indices.append(IndexValue(1))
                return {
                    "closed": True,
                    "handle": current,
                    "indices": indices,
                    "certificate": {"method": "finite stabilization", "steps": len(chain) - 1},
                }
            current = nxt
            chain.append(current)
        raise InvariantViolation("increasing chain did not stabilize in a finite group")

    def entropy_base_certificate(self, phi, probed):
        if all(entry[2].is_zero for entry in probed):
            return True, "finite group: every local entropy is 0"
        raise InvariantViolation("nonzero local entropy in a finite group")

    def scale_candidates(self, phi, probe):
        # Complete enumeration: the scale minimum over this family is exact.
        return list(self.all_subgroups())

    def nub_analysis(self, phi, minimizing, resolution, scale_value=None):
        """Exact nub: the subgroup list is complete, so intersect all
        minimizing subgroups."""
        inter = self.full_group()
        for u in minimizing:
            inter = self.intersect(inter, u)
        return inter, True, "complete subgroup enumeration"

    # -- exhaustive index identity checks -------------------------------------

    def check_index_identities(self) -> dict:
        """Exhaustively verify the index identities over the whole lattice.

        Covers the multiplicativity chain rule, the product/intersection
        exchange, both monotonicity inequalities, the two homomorphism index
        identities over every endomorphism, the snake count and the
        normalized-core properties.  Any violation is fatal.
        """
        subs = self.all_subgroups()
        counts = {k: 0 for k in ("gi1", "gi2", "gi3", "gi4", "gi5", "gi6", "snake", "magic")}

        def idx(V, U):
            return len(U.members) // len(V.members)

        for K in subs:
            kset = set(K.members)
            for H in subs:
                if not set(H.members) <= kset:
                    continue
                for L in subs:
                    if kset <= set(L.members):
                        # gi1: [L:H] = [L:K][K:H]
                        if idx(H, L) != idx(K, L) * idx(H, K):
                            raise InvariantViolation("gi(1) failed")
                        counts["gi1"] += 1
                    # gi3: [K:H] >= [K n L : H n L]
                    KL = self.intersect(K, L)
                    HL = self.intersect(H, L)
                    if idx(H, K) < idx(HL, KL):
                        raise InvariantViolation("gi(3) failed")
                    counts["gi3"] += 1
                    # gi4: [K:H] >= [KL:HL] provided HL = LH
                    hl = self.set_mul(H.members, L.members)
                    if hl == self.set_mul(L.members, H.members):
                        hl_sub = self.subgroup(hl)
                        kl = self.set_mul(K.members, L.members)
                        if idx(H, K) < self.coset_count(kl, hl_sub):
                            raise InvariantViolation("gi(4) failed")
                        counts["gi4"] += 1

        for L in subs:
            for H in subs:
                # gi2: [LH:H] = [L : H n L]
                lh_count = self.coset_count(self.set_mul(L.members, H.members), H)
                if lh_count != idx(self.intersect(H, L), L):
                    raise InvariantViolation("gi(2) failed")
                counts["gi2"] += 1

        for phi in self.endomorphisms():
            img = self.image(phi, self.full_group())
            ker = self.kernel_handle(phi)
            for K in subs:
                kset = set(K.members)
                for H in subs:
                    if not set(H.members) <= kset:
                        continue
                    # gi5: [phi^-1 K : phi^-1 H] = [K n Im : H n Im] <= [K:H]
                    pk, ph = self.preimage(phi, K), self.preimage(phi, H)
                    lhs = idx(ph, pk)
                    rhs = idx(self.intersect(H, img), self.intersect(K, img))
                    if lhs != rhs or lhs > idx(H, K):
                        raise InvariantViolation("gi(5) failed")
                    counts["gi5"] += 1
                    # gi6: [K ker : H ker] = [phi K : phi H] <= [K:H]
                    kker = self.subgroup(self.set_mul(K.members, ker.members))
                    hker = self.subgroup(self.set_mul(H.members, ker.members))
                    lhs = idx(hker, kker)
                    rhs = idx(self.image(phi, H), self.image(phi, K))
                    if lhs != rhs or rhs > idx(H, K):
                        raise InvariantViolation("gi(6) failed")
                    counts["gi6"] += 1

        B = self.full_group()
        for A in subs:
            for Bp in subs:
                ba = self.set_mul(Bp.members, A.members)
                if ba != self.set_mul(A.members, Bp.members):
                    continue
                ba_sub = self.subgroup(ba)
                Ap = self.intersect(A, Bp)
                if idx(Bp, B) != idx(Ap, A) * idx(ba_sub, B):
                    raise InvariantViolation("snake failed")
                counts["snake"] += 1

        for K in subs:
            for C in subs:
                L = self.normalized_core(K, C)
                cl = self.set_mul(C.members, L.members)
                if cl != self.set_mul(L.members, C.members):
                    raise InvariantViolation("CL is not a subgroup after the core")
                self.subgroup(cl)
                counts["magic"] += 1

        return counts


# -- standard groups ----------------------------------------------------------


def _perm_mul(p, q):
    """(p*q)(i) = p(q(i))"""
    return tuple(p[q[i]] for i in range(len(p)))


def from_permutations(gens, name="G", names=None) -> FiniteGroupModel:
    n = len(gens[0])
    identity = tuple(range(n))
    els = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                for y in (_perm_mul(x, g), _perm_mul(g, x)):
                    if y not in els:
                        els.add(y)
                        nxt.append(y)
        frontier = nxt
    ordered = sorted(els)
    pos = {p: i for i, p in enumerate(ordered)}
    table = [[pos[_perm_mul(a, b)] for b in ordered] for a in ordered]
    if names is None:
        names = tuple("".join(map(str, p)) for p in ordered)
    return FiniteGroupModel(table, names=names, name=name)


def trivial_group() -> FiniteGroupModel:
    return FiniteGroupModel(((0,),), names=("e",), name="1")


def cyclic_group(n: int) -> FiniteGroupModel:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroupModel(table, names=tuple(str(i) for i in range(n)), name=f"Z{n}")


def symmetric_group(n: int) -> FiniteGroupModel:
    cycle = tuple((i + 1) % n for i in range(n))
    swap = (1, 0) + tuple(range(2, n))
    return from_permutations([cycle, swap], name=f"S{n}")


def alternating_group(n: int) -> FiniteGroupModel:
    if n < 3:
        return trivial_group()
    three = (1, 2, 0) + tuple(range(3, n))
    if n == 3:
        gens = [three]
    else:
        double = (1, 0, 3, 2) + tuple(range(4, n))
        gens = [three, double]
    return from_permutations(gens, name=f"A{n}")


def dihedral_group(n: int) -> FiniteGroupModel:
    rot = tuple((i + 1) % n for i in range(n))
    refl = tuple((n - i) % n for i in range(n))
    return from_permutations([rot, refl], name=f"D{n}")


def quaternion_group() -> FiniteGroupModel:
    # elements 1,-1,i,-i,j,-j,k,-k encoded as (sign, axis), axis in e,i,j,k
    units = ["e", "i", "j", "k"]
    mul_unit = {
        ("e", "e"): (1, "e"), ("e", "i"): (1, "i"), ("e", "j"): (1, "j"), ("e", "k"): (1, "k"),
        ("i", "e"): (1, "i"), ("j", "e"): (1, "j"), ("k", "e"): (1, "k"),
        ("i", "i"): (-1, "e"), ("j", "j"): (-1, "e"), ("k", "k"): (-1, "e"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    elements = [(s, u) for u in units for s in (1, -1)]
    pos = {x: i for i, x in enumerate(elements)}
    table = []
    for (s1, u1) in elements:
        row = []
        for (s2, u2) in elements:
            s3, u3 = mul_unit[(u1, u2)]
            row.append(pos[(s1 * s2 * s3, u3)])
        table.append(row)
    names = tuple(("" if s == 1 else "-") + u for (s, u) in elements)
    return FiniteGroupModel(table, names=names, name="Q8")


NAMED_GROUPS = {
    "trivial": trivial_group,
    "Z12": lambda: cyclic_group(12),
    "S3": lambda: symmetric_group(3),
    "D4": lambda: dihedral_group(4),
    "Q8": quaternion_group,
    "A4": lambda: alternating_group(4),
}
