"""p-adic linear backend: G = Q_p^d with a rational matrix endomorphism.

Closed subgroups are represented exactly as V + L with V a rational subspace
(the divisible, non-compact part) and L a finitely generated Z_(p)-module.
Only the valuation at p matters, so all arithmetic stays in Fraction and the
canonical form is a reduced-row-echelon basis for V plus a p-local column
Hermite form for L projected mod V.  Every index is a pure p-power read off
elementary-divisor valuations.

Each subgroup also has a dual description by constraints: x lies in the
subgroup iff N x = 0 and D x is p-integral.  Intersections and preimages are
computed by stacking constraints and converting back, which is exact and
needs no iteration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

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
from ..linalg import (
    charpoly,
    det,
    frac,
    frac_matrix,
    identity_matrix,
    integer_kernel,
    mat_mul,
    mat_pow,
    mat_vec,
    pval,
    rational_kernel,
    rref,
    solve_right,
    transpose,
    zp_column_hnf,
)

F = Fraction


@dataclass(frozen=True)
class PadicSubgroup:
    """Canonical closed subgroup V + L of Q_p^d.

    ``subspace`` holds rref basis rows of V; ``module`` holds the p-local
    Hermite columns of L projected mod V.  Handles are equal iff the
    subgroups are equal.
    """

    model: "PadicModel"
    subspace: tuple
    module: tuple

    @property
    def is_compact(self) -> bool:
        return not self.subspace

    @property
    def is_open(self) -> bool:
        return len(self.subspace) + len(self.module) == self.model.dim

    @property
    def rank(self) -> int:
        return len(self.module)

    def describe(self) -> str:
        if not self.subspace and not self.module:
            return "0"
        parts = []
        if self.subspace:
            rows = ";".join(",".join(str(x) for x in r) for r in self.subspace)
            parts.append(f"span({rows})")
        if self.module:
            cols = ";".join(",".join(str(x) for x in c) for c in self.module)
            parts.append(f"lattice({cols})")
        return "+".join(parts)


@dataclass(frozen=True)
class PadicEndo:
    """A continuous endomorphism of Q_p^d: multiplication by a rational matrix."""

    model: "PadicModel"
    matrix: tuple

    @property
    def kernel_trivial(self) -> bool:
        return self.model.dim == 0 or det(self.matrix) != 0

    @property
    def surjective(self) -> bool:
        return self.kernel_trivial


class PadicModel:
    """The group Q_p^d together with exact lattice arithmetic."""

    capabilities = frozenset(
        {"quotient", "restriction", "set_product", "tidy_below_certificate", "base_stabilizes"}
    )
    kind = "padic"

    def __init__(self, p: int, dim: int, base_lattice=None, name=""):
        if p < 2 or any(p % q == 0 for q in range(2, p)):
            raise ValueError(f"{p} is not prime")
        if dim < 0:
            raise ValueError("dimension must be >= 0")
        self.p = p
        self.dim = dim
        self.name = name or f"Q{p}^{dim}"
        if base_lattice is None:
            base_lattice = tuple(
                tuple(F(1) if i == j else F(0) for i in range(dim)) for j in range(dim)
            )
        self._base_cols = frac_matrix(base_lattice)

    # -- handle construction --------------------------------------------------

    def closed_subgroup(self, subspace_rows=(), module_cols=()) -> PadicSubgroup:
        rows, piv = rref(frac_matrix(subspace_rows)) if subspace_rows else ((), ())
        cols = [list(map(frac, c)) for c in module_cols]
        for c in cols:
            for r, pc in zip(rows, piv):
                if c[pc] != 0:
                    f = c[pc]
                    for i in range(self.dim):
                        c[i] -= f * r[i]
        module, _ = zp_column_hnf(cols, self.dim, self.p)
        return PadicSubgroup(self, rows, module)

    def lattice(self, cols) -> PadicSubgroup:
        return self.closed_subgroup((), cols)

    def full_lattice(self) -> PadicSubgroup:
        return self.closed_subgroup((), self._base_cols)

    def zero_subgroup(self) -> PadicSubgroup:
        return self.closed_subgroup((), ())

    def trivial_subgroup(self) -> PadicSubgroup:
        return self.zero_subgroup()

    def full_group(self) -> PadicSubgroup:
        return self.whole_space()

    def whole_space(self) -> PadicSubgroup:
        return self.closed_subgroup(identity_matrix(self.dim), ())

    def scale_handle(self, U: PadicSubgroup, c: Fraction) -> PadicSubgroup:
        return self.closed_subgroup(U.subspace, [[frac(c) * x for x in col] for col in U.module])

    def base_element(self, k: int) -> PadicSubgroup:
        return self.scale_handle(self.full_lattice(), F(self.p) ** k)

    def endo(self, matrix) -> PadicEndo:
        m = frac_matrix(matrix)
        if len(m) != self.dim or any(len(r) != self.dim for r in m):
            raise ValueError("endomorphism matrix has wrong shape")
        return PadicEndo(self, m)

    def identity_endo(self) -> PadicEndo:
        return PadicEndo(self, identity_matrix(self.dim))

    def endo_power(self, phi: PadicEndo, n: int) -> PadicEndo:
        return PadicEndo(self, mat_pow(phi.matrix, n))

    def kernel_handle(self, phi: PadicEndo) -> PadicSubgroup:
        return self.closed_subgroup(rational_kernel(phi.matrix), ())

    def _check_same(self, *handles):
        for h in handles:
            if h.model is not self:
                raise BackendMismatchError("handle belongs to a different group")

    # -- constraint form -------------------------------------------------------

    def constraint_form(self, U: PadicSubgroup):
        """(N, D): x in U  iff  N x = 0 and every entry of D x is p-integral."""
        span_rows = tuple(U.subspace) + tuple(U.module)
        if not span_rows:
            return identity_matrix(self.dim), ()
        n_rows = rational_kernel(span_rows)
        if not U.module:
            return n_rows, ()
        cols = [tuple(r) for r in U.subspace] + [tuple(c) for c in U.module]
        bt = tuple(zip(*cols)) if cols else ()
        d_rows = []
        for t in range(len(U.subspace), len(cols)):
            target = tuple(F(1) if i == t else F(0) for i in range(len(cols)))
            q = solve_right(tuple(zip(*bt)), target)
            if q is None:
                raise InvariantViolation("span basis lost full column rank")
            d_rows.append(q)
        return n_rows, tuple(d_rows)

    def from_constraints(self, n_rows, d_rows) -> PadicSubgroup:
        """The closed subgroup {x : N x = 0, D x p-integral}."""
        if n_rows:
            v0 = rational_kernel(n_rows)
        else:
            v0 = identity_matrix(self.dim)
        if not v0:
            return self.zero_subgroup()
        if not d_rows:
            return self.closed_subgroup(v0, ())
        v0t = transpose(v0)  # d x s, x = V0^T t
        e = mat_mul(frac_matrix(d_rows), v0t)  # m x s
        kern = rational_kernel(e)
        sub_rows = [mat_vec(v0t, k) for k in kern] if kern else []
        im_basis, _ = rref(transpose(e))
        mod_cols = []
        if im_basis:
            cuts = rational_kernel(im_basis)
            gens = integer_kernel(cuts) if cuts else [
                tuple(1 if i == j else 0 for i in range(len(e))) for j in range(len(e))
            ]
            for g in gens:
                t = solve_right(e, g)
                if t is None:
                    raise InvariantViolation("integral image generator left the column space")
                mod_cols.append(mat_vec(v0t, t))
        return self.closed_subgroup(sub_rows, mod_cols)

    # -- membership, containment, index ---------------------------------------

    def _reduce_mod_subspace(self, U: PadicSubgroup, x):
        x = list(map(frac, x))
        _, piv = rref(U.subspace) if U.subspace else ((), ())
        for r, pc in zip(U.subspace, piv):
            if x[pc] != 0:
                f = x[pc]
                for i in range(self.dim):
                    x[i] -= f * r[i]
        return x

    def _module_coefficients(self, U: PadicSubgroup, x) -> Optional[tuple]:
        """Coefficients of x over U.module, or None if x is outside its span."""
        x = list(x)
        coeffs = []
        for col in U.module:
            i_t = next(i for i, v in enumerate(col) if v != 0)
            c = x[i_t] / col[i_t]
            coeffs.append(c)
            for i in range(self.dim):
                x[i] -= c * col[i]
        if any(v != 0 for v in x):
            return None
        return tuple(coeffs)

    def member(self, U: PadicSubgroup, x) -> bool:
        rem = self._reduce_mod_subspace(U, x)
        coeffs = self._module_coefficients(U, rem)
        if coeffs is None:
            return False
        return all(c == 0 or pval(c, self.p) >= 0 for c in coeffs)

    def contains(self, U: PadicSubgroup, V: PadicSubgroup) -> bool:
        """V <= U"""
        self._check_same(U, V)
        for row in V.subspace:
            rem = self._reduce_mod_subspace(U, row)
            if any(v != 0 for v in rem):
                return False
        return all(self.member(U, col) for col in V.module)

    def index(self, V: PadicSubgroup, U: PadicSubgroup) -> IndexValue:
        """Exact [U:V]; requires V <= U; infinite when V is not open in U."""
        self._check_same(U, V)
        if not self.contains(U, V):
            raise ValueError("index requires V <= U")
        if V.subspace != U.subspace or len(V.module) < len(U.module):
            return INFINITE_INDEX
        if not U.module:
            return IndexValue(1)
        x_cols = []
        for col in V.module:
            coeffs = self._module_coefficients(U, list(col))
            if coeffs is None:
                raise InvariantViolation("contained module escaped the span")
            x_cols.append(coeffs)
        v = pval(det(transpose(x_cols)), self.p)
        if v is None or v < 0:
            raise InvariantViolation("transition matrix is not p-integral")
        return IndexValue(self.p**v)

    # -- subgroup operations ----------------------------------------------------

    def intersect(self, U: PadicSubgroup, V: PadicSubgroup) -> PadicSubgroup:
        self._check_same(U, V)
        nu, du = self.constraint_form(U)
        nv, dv = self.constraint_form(V)
        return self.from_constraints(tuple(nu) + tuple(nv), tuple(du) + tuple(dv))

    def set_product(self, U: PadicSubgroup, V: PadicSubgroup) -> PadicSubgroup:
        self._check_same(U, V)
        return self.closed_subgroup(U.subspace + V.subspace, U.module + V.module)

    def image(self, phi: PadicEndo, U: PadicSubgroup) -> PadicSubgroup:
        self._check_same(U)
        a = phi.matrix
        return self.closed_subgroup(
            [mat_vec(a, row) for row in U.subspace],
            [mat_vec(a, col) for col in U.module],
        )

    def preimage(self, phi: PadicEndo, U: PadicSubgroup) -> PadicSubgroup:
        self._check_same(U)
        n, d = self.constraint_form(U)
        a = phi.matrix
        return self.from_constraints(mat_mul(n, a), mat_mul(d, a))

    # -- specs, quotient, restriction -------------------------------------------

    def subgroup_flags(self, phi: PadicEndo, H: PadicSubgroup) -> dict:
        self._check_same(H)
        img = self.image(phi, H)
        return {
            "normal": True,
            "compact": H.is_compact,
            "phi_invariant": self.contains(H, img),
            "phi_stable": img == H,
            "contains_kernel": self.contains(H, self.kernel_handle(phi)),
        }

    def quotient(self, phi: PadicEndo, H: PadicSubgroup) -> QuotientConstruction:
        self._check_same(H)
        if H.module:
            raise UnsupportedSubgroupError(
                "can only quotient by a rational subspace in this backend"
            )
        rows, piv = rref(H.subspace) if H.subspace else ((), ())
        nonpiv = [j for j in range(self.dim) if j not in set(piv)]
        dprime = len(nonpiv)

        def project_vec(x):
            rem = self._reduce_mod_subspace(H, x)
            return tuple(rem[j] for j in nonpiv)

        a = phi.matrix
        cols = []
        for j in nonpiv:
            unit = [F(1) if i == j else F(0) for i in range(self.dim)]
            cols.append(project_vec(mat_vec(a, unit)))
        qmatrix = transpose(cols) if cols else ()
        qbase = [project_vec(col) for col in self._base_cols]
        qmodel = PadicModel(self.p, dprime, name=f"{self.name}/H")
        projected = tuple(c for c in (tuple(map(frac, col)) for col in qbase) if any(c))
        if projected:
            qmodel._base_cols = projected
        qendo = qmodel.endo(qmatrix)
        system = TdlcSystem(qmodel, qendo, name=f"{self.name}/H")

        def project(U: PadicSubgroup) -> PadicSubgroup:
            return qmodel.closed_subgroup(
                [project_vec(r) for r in U.subspace],
                [project_vec(c) for c in U.module],
            )

        return QuotientConstruction(system=system, project=project)

    def restriction(self, phi: PadicEndo, H: PadicSubgroup) -> RestrictionConstruction:
        self._check_same(H)
        if H.module:
            raise UnsupportedSubgroupError(
                "can only restrict to a rational subspace in this backend"
            )
        rows, piv = (rref(H.subspace) if H.subspace else ((), ()))
        s = len(rows)
        a = phi.matrix

        def coords(x) -> tuple:
            return tuple(frac(x[pc]) for pc in piv)

        def embed_vec(t):
            out = [F(0)] * self.dim
            for c, row in zip(t, rows):
                for i in range(self.dim):
                    out[i] += c * row[i]
            return tuple(out)

        cols = []
        for row in rows:
            img = mat_vec(a, row)
            t = coords(img)
            if tuple(embed_vec(t)) != tuple(img):
                raise UnsupportedSubgroupError("H is not carried into itself")
            cols.append(t)
        smatrix = transpose(cols) if cols else ()
        submodel = PadicModel(self.p, s, name=f"{self.name}|H")
        base_meet = self.intersect(self.full_lattice(), PadicSubgroup(self, rows, ()))
        submodel._base_cols = tuple(coords(c) for c in base_meet.module)
        sendo = submodel.endo(smatrix)
        system = TdlcSystem(submodel, sendo, name=f"{self.name}|H")

        def embed(U: PadicSubgroup) -> PadicSubgroup:
            return self.closed_subgroup(
                [embed_vec(r) for r in U.subspace],
                [embed_vec(c) for c in U.module],
            )

        def restrict_handle(U: PadicSubgroup) -> PadicSubgroup:
            met = self.intersect(U, PadicSubgroup(self, rows, ()))
            return submodel.closed_subgroup(
                [coords(r) for r in met.subspace], [coords(c) for c in met.module]
            )

        return RestrictionConstruction(system=system, embed=embed, restrict_handle=restrict_handle)

    # -- Newton polygon oracle ---------------------------------------------------

    def newton_polygon(self, phi: PadicEndo):
        """Root valuations of the characteristic polynomial with multiplicity.

        Returned as a sorted tuple of (valuation, multiplicity); valuation is
        None for the zero roots (infinite valuation, omitted from the hull).
        """
        return _root_valuations(charpoly(phi.matrix), self.p)

    def entropy_exponent(self, phi: PadicEndo) -> int:
        """e with predicted local entropy log p^e: sum of -v over roots with v < 0."""
        e = F(0)
        for v, mult in self.newton_polygon(phi):
            if v is not None and v < 0:
                e += -v * mult
        if e.denominator != 1:
            raise InvariantViolation("total expanding valuation must be an integer")
        return int(e)

    # -- structural limits ---------------------------------------------------------

    def _slope_split(self, phi: PadicEndo, keep) -> Optional[tuple]:
        """Rows of the A-invariant rational subspace spanned by the generalized
        eigenspaces whose root valuations satisfy ``keep``; None if some
        rational factor mixes kept and dropped valuations."""
        factors = _rational_factor_list(charpoly(phi.matrix))
        poly = (F(1),)
        dim_kept = 0
        for coeffs, mult in factors:
            vals = _root_valuations(coeffs, self.p)
            flags = {keep(v) for v, _ in vals}
            if len(flags) > 1:
                return None
            if flags == {True}:
                for _ in range(mult):
                    poly = _poly_mul(poly, coeffs)
                dim_kept += (len(coeffs) - 1) * mult
        if dim_kept == 0:
            return ()
        if dim_kept == self.dim:
            return identity_matrix(self.dim)
        mat = _poly_eval_matrix(poly, phi.matrix)
        rows = rational_kernel(mat)
        if len(rows) != dim_kept:
            raise InvariantViolation("generalized eigenspace has unexpected dimension")
        return rows

    def plus_group_impl(self, phi: PadicEndo, U: PadicSubgroup, probe: int):
        current = U
        prefix = [U]
        for n in range(min(probe, 64)):
            nxt = self.intersect(U, self.image(phi, current))
            if nxt == current:
                return current, "fixpoint", n, {"fixpoint_at": n}
            current = nxt
            prefix.append(current)
        v_plus = self._slope_split(phi, lambda v: v is not None and v <= 0)
        if v_plus is None:
            raise UnresolvedError(
                "a rational factor of the characteristic polynomial mixes "
                "expanding and contracting root valuations"
            )
        if not v_plus:
            result = self.zero_subgroup()
            return result, "structural", len(prefix), {"invariant_subspace_dim": 0}
        rest = self.restriction(phi, self.closed_subgroup(v_plus, ()))
        sub = rest.system.model
        u_sub = rest.restrict_handle(U)
        cur = u_sub
        for n in range(4 * probe + 16):
            nxt = sub.intersect(u_sub, sub.image(rest.system.endo, cur))
            if nxt == cur:
                result = rest.embed(cur)
                for h in prefix:
                    if not self.contains(h, result):
                        raise InvariantViolation("structural limit escaped an iterate")
                cert = {
                    "invariant_subspace_dim": len(v_plus),
                    "restricted_fixpoint_at": n,
                }
                return result, "structural", n, cert
            cur = nxt
        raise UnresolvedError("restricted forward iteration did not stabilize in bound")

    def minus_group_impl(self, phi: PadicEndo, U: PadicSubgroup, probe: int):
        current = U
        for n in range(min(probe, 64)):
            nxt = self.intersect(current, self.preimage(phi, current))
            if nxt == current:
                return current, {"method": "fixpoint", "fixpoint_at": n}
            current = nxt
        v_minus = self._slope_split(phi, lambda v: v is None or v >= 0)
        if v_minus is None:
            raise UnresolvedError(
                "a rational factor of the characteristic polynomial mixes "
                "bounded and unbounded forward directions"
            )
        if not v_minus:
            return self.zero_subgroup(), {"method": "structural", "invariant_subspace_dim": 0}
        rest = self.restriction(phi, self.closed_subgroup(v_minus, ()))
        sub = rest.system.model
        u_sub = rest.restrict_handle(U)
        cur = u_sub
        for n in range(4 * probe + 16):
            nxt = sub.intersect(u_sub, sub.preimage(rest.system.endo, cur))
            if nxt == cur:
                return rest.embed(cur), {
                    "method": "structural",
                    "invariant_subspace_dim": len(v_minus),
                    "restricted_fixpoint_at": n,
                }
            cur = nxt
        raise UnresolvedError("restricted backward iteration did not stabilize in bound")

    def alpha_stabilization(self, phi, U, minus_handles, alphas, n_max):
        """Certified once alpha reaches the Newton polygon prediction p^e:
        alpha is non-increasing and bounded below by its limit, so equality
        with the predicted limit pins the tail."""
        predicted = self.p ** self.entropy_exponent(phi)
        for n, a in enumerate(alphas):
            if a == predicted:
                return n, {"criterion": "newton polygon", "predicted_alpha": predicted}
            if a < predicted:
                raise InvariantViolation("alpha fell below the Newton polygon prediction")
        return None, {"criterion": "newton polygon", "predicted_alpha": predicted}

    def plus_plus_analysis(self, phi, u_plus: PadicSubgroup, probe: int):
        indices = []
        current = u_plus
        chain = [u_plus]
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
        v_neg = self._slope_split(phi, lambda v: v is not None and v < 0)
        if v_neg is None:
            raise UnresolvedError("no rational split between unit and expanding directions")
        neg_handle = self.closed_subgroup(v_neg, ())
        l_neg = self.intersect(u_plus, neg_handle)
        if len(l_neg.module) != len(v_neg):
            raise UnresolvedError("U+ does not meet the expanding subspace in full rank")
        candidate = self.closed_subgroup(
            tuple(u_plus.subspace) + tuple(v_neg), u_plus.module
        )
        if not self.contains(candidate, self.image(phi, candidate)):
            raise UnresolvedError("expanding-span candidate is not forward invariant")
        shrunk = self.scale_handle(l_neg, F(1, self.p))
        covered = False
        img = l_neg
        for k in range(1, probe + 1):
            img = self.image(phi, img)
            if self.contains(img, shrunk):
                covered = True
                break
        if not covered:
            raise UnresolvedError("expanding directions were not covered within the probe")
        return {
            "closed": True,
            "handle": candidate,
            "indices": indices,
            "certificate": {
                "method": "unit part frozen, expanding subspace filled",
                "expanding_dim": len(v_neg),
                "cover_power": k,
            },
        }

    # -- dynamics hooks -------------------------------------------------------------

    def entropy_base_certificate(self, phi, probed):
        values = {entry[2] for entry in probed}
        if len(values) == 1:
            return True, "scaling a lattice by p commutes with the endomorphism"
        raise InvariantViolation("local entropy varied across commensurable lattices")

    def scale_candidates(self, phi, probe):
        out = [self.full_lattice()]
        factors = _rational_factor_list(charpoly(phi.matrix))
        groups: dict = {}
        for coeffs, mult in factors:
            vals = _root_valuations(coeffs, self.p)
            if len({v for v, _ in vals}) != 1:
                return out
            v = vals[0][0]
            poly = groups.get(v, (F(1),))
            for _ in range(mult):
                poly = _poly_mul(poly, coeffs)
            groups[v] = poly
        if len(groups) > 1:
            pieces = []
            for v, poly in sorted(groups.items(), key=lambda kv: (kv[0] is None, kv[0])):
                rows = rational_kernel(_poly_eval_matrix(poly, phi.matrix))
                met = self.intersect(self.full_lattice(), self.closed_subgroup(rows, ()))
                pieces.extend(met.module)
            out.append(self.lattice(pieces))
        return out

    def nub_analysis(self, phi, minimizing, resolution, scale_value=None):
        if not minimizing:
            return None, False, "no minimizing subgroup found in the probe"
        witness = minimizing[0]
        # p-power scalings of a minimizing subgroup are minimizing with the
        # same index (scaling commutes with the matrix), and they intersect
        # down to 0.
        for k in range(1, resolution + 1):
            scaled = self.scale_handle(witness, F(self.p) ** k)
            a = self.image(phi, scaled)
            v = self.intersect(scaled, a)
            if scale_value is not None and self.index(v, a) != IndexValue(scale_value):
                raise InvariantViolation("scaled witness stopped being minimizing")
        return (
            self.zero_subgroup(),
            True,
            "p-power scaling chain of the witness is minimizing and intersects to 0",
        )


# -- polynomial helpers -------------------------------------------------------------


def _poly_mul(a, b):
    out = [F(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _poly_eval_matrix(coeffs, a):
    d = len(a)
    ident = identity_matrix(d)
    out = tuple(tuple(coeffs[-1] * ident[i][j] for j in range(d)) for i in range(d))
    for c in reversed(coeffs[:-1]):
        out = mat_mul(out, a)
        out = tuple(
            tuple(out[i][j] + (c if i == j else 0) for j in range(d)) for i in range(d)
        )
    return out


def _rational_factor_list(coeffs):
    """Irreducible monic factors over Q of a monic polynomial, with multiplicity."""
    import sympy

    x = sympy.symbols("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(coeffs))
    _, factors = sympy.Poly(expr, x, domain="QQ").factor_list()
    out = []
    for poly, mult in factors:
        monic = poly.monic()
        cs = [F(sympy.Rational(c).p, sympy.Rational(c).q) for c in monic.all_coeffs()]
        cs.reverse()
        out.append((tuple(cs), int(mult)))
    return out


def _root_valuations(coeffs, p: int):
    """Root valuations from the lower Newton polygon of (i, v_p(c_i)).

    Zero roots (infinite valuation) come from vanishing low coefficients and
    are reported as (None, multiplicity); finite valuations are the negatives
    of the hull slopes, each with the segment width as multiplicity.
    """
    d = len(coeffs) - 1
    points = [(i, pval(coeffs[i], p)) for i in range(d + 1) if coeffs[i] != 0]
    out = []
    first = points[0][0]
    if first > 0:
        out.append((None, first))
    hull = [points[0]]
    for pt in points[1:]:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = F(y2 - y1, x2 - x1)
        out.append((-slope, x2 - x1))
    return tuple(sorted(out, key=lambda t: (t[0] is None, t[0])))
