"""Extended Farey symbols and the membership-driven subgroup algorithm.

A symbol is a circular list of oriented geodesic arcs between cusps
together with a side-pairing involution, elliptic markings mu in
{1, 2, 3} (1 = plain side) and gluing matrices.  The subgroup routine
unfolds a parent symbol across its arcs, discovering coset
representatives of the subgroup with a FIFO worklist; order-3 elliptic
arcs get queue priority, and leftover order-3 orbits of the induced
pairing are rectified into four plain arcs.

Groups are treated projectively: a membership predicate on matrices is
symmetrized over +/-Id for all geometry, while stored gluing matrices
keep the sign that actually satisfies the raw predicate whenever one
does.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .modgroup import (
    ID,
    SIGMA,
    T_MAT,
    TAU,
    CuspT,
    Mat,
    act,
    cusp_str,
    madj,
    matrix_to_cusp,
    minv,
    mmul,
    mneg,
    psl2_order,
)

__all__ = [
    "FareyError",
    "GroupSpec",
    "ExtendedFareySymbol",
    "CosetTable",
    "base_symbol_sl2z",
    "subgroup_farey",
    "gamma0_group",
    "gamma1_group",
    "gamma_full_group",
    "conjugated_group",
    "intersection_group",
    "gamma0_symbol",
    "gamma1_symbol",
    "gamma_full_symbol",
    "coset_decompose",
]


class FareyError(Exception):
    """Raised on invalid symbols, bad predicates, or exceeded index bounds."""


def _symmetrize(member):
    return lambda g: member(g) or member(mneg(g))


def _sign_into(member, g: Mat) -> Mat:
    """Return +/-g satisfying the raw predicate, preferring +g."""
    if member(g):
        return g
    ng = mneg(g)
    if member(ng):
        return ng
    raise FareyError("matrix lies in neither sign class of the subgroup")


@dataclass
class GroupSpec:
    """Membership predicate plus an optional perfect left-coset key.

    The key must satisfy key(g) == key(h) iff the projective cosets
    G(+/-)g and G(+/-)h agree; it turns coset detection into a dict
    lookup.  Without a key the engine falls back to a linear scan,
    which is fine for small indices (Hecke intersections).
    """

    member: callable
    key: callable | None = None
    name: str = "subgroup"


def gamma0_group(n: int) -> GroupSpec:
    if n < 1:
        raise ValueError("level must be positive")
    units = [u for u in range(1, n + 1) if gcd(u, n) == 1]

    def member(g):
        return g[2] % n == 0

    def key(g):
        c, d = g[2] % n, g[3] % n
        return min(((u * c) % n, (u * d) % n) for u in units)

    return GroupSpec(member, key, f"gamma0({n})")


def gamma1_group(n: int) -> GroupSpec:
    if n < 1:
        raise ValueError("level must be positive")

    one = 1 % n

    def member(g):
        return g[2] % n == 0 and g[0] % n == one and g[3] % n == one

    def key(g):
        pair = (g[2] % n, g[3] % n)
        return min(pair, ((-g[2]) % n, (-g[3]) % n))

    return GroupSpec(member, key, f"gamma1({n})")


def gamma_full_group(n: int) -> GroupSpec:
    if n < 1:
        raise ValueError("level must be positive")

    one = 1 % n

    def member(g):
        return (
            g[0] % n == one and g[3] % n == one and g[1] % n == 0 and g[2] % n == 0
        )

    def key(g):
        red = tuple(x % n for x in g)
        return min(red, tuple((-x) % n for x in g))

    return GroupSpec(member, key, f"gamma({n})")


def conjugated_group(alpha: Mat, inner: GroupSpec, name: str | None = None) -> GroupSpec:
    """Matrices g with alpha g alpha^-1 integral and inside `inner`."""
    det = alpha[0] * alpha[3] - alpha[1] * alpha[2]
    if det <= 0:
        raise ValueError("conjugating matrix must have positive determinant")
    aadj = madj(alpha)

    def member(g):
        m = mmul(alpha, g, aadj)
        if any(x % det for x in m):
            return False
        return inner.member(tuple(x // det for x in m))

    return GroupSpec(member, None, name or f"conj({inner.name})")


def intersection_group(*specs: GroupSpec) -> GroupSpec:
    def member(g):
        return all(s.member(g) for s in specs)

    keys = [s.key for s in specs]
    key = None
    if all(keys):
        def key(g):  # noqa: F811 - deliberate rebinding
            return tuple(k(g) for k in keys)

    return GroupSpec(member, key, " & ".join(s.name for s in specs))


class CosetTable:
    """Right-coset representatives of a subgroup inside its parent group.

    reps[0] is always the identity.  locate() answers, for g in the
    parent group, which coset (projectively) g lies in and with which
    subgroup element it differs from the representative.
    """

    def __init__(self, spec: GroupSpec, parent_symbol):
        self.spec = spec
        self.member = spec.member
        self.member2 = _symmetrize(spec.member)
        self.parent_symbol = parent_symbol  # None means parent is SL2(Z)
        self.reps: list[Mat] = [ID]
        self._rep_invs: list[Mat] = [ID]
        self._by_key = {spec.key(ID): 0} if spec.key else None

    def __len__(self):
        return len(self.reps)

    def class_index(self, g: Mat):
        """Index of the projective coset of g, or None if undiscovered."""
        if self._by_key is not None:
            return self._by_key.get(self.spec.key(g))
        for i, inv in enumerate(self._rep_invs):
            if self.member2(mmul(g, inv)):
                return i
        return None

    def add_rep(self, g: Mat) -> int:
        if self.class_index(g) is not None:
            raise FareyError("attempted to add a duplicate coset representative")
        self.reps.append(g)
        self._rep_invs.append(minv(g))
        if self._by_key is not None:
            self._by_key[self.spec.key(g)] = len(self.reps) - 1
        return len(self.reps) - 1

    def locate(self, g: Mat) -> tuple[int, Mat]:
        """(coset index, gamma) with g = gamma * rep up to the +/- ambiguity.

        gamma is sign-normalized into the subgroup when possible, so
        g == gamma * rep or g == -gamma * rep.
        """
        i = self.class_index(g)
        if i is None:
            raise FareyError("matrix is not in any discovered coset")
        gamma = mmul(g, self._rep_invs[i])
        return i, _sign_into(self.member, gamma)


Endpoint = tuple  # ('c', cusp) or ('e', base arc index)


@dataclass(frozen=True)
class TildeArc:
    start: Endpoint
    end: Endpoint
    glue: Mat
    base: int          # index of the underlying symbol arc
    half: str          # 'whole', 'u' or 'v'
    star: int = -1     # filled in after the full list exists


class ExtendedFareySymbol:
    def __init__(self, arcs, star, mu, glue, index, member, table=None, name="sl2z"):
        self.arcs: list[tuple[CuspT, CuspT]] = list(arcs)
        self.star: list[int] = list(star)
        self.mu: list[int] = list(mu)
        self.glue: list[Mat] = list(glue)
        self.index: int = index          # absolute index in PSL2(Z)
        self.member = member             # raw matrix predicate of this group
        self.member2 = _symmetrize(member)
        self.table = table               # CosetTable inside the parent, None for SL2(Z)
        self.name = name
        self._tilde = None
        self._cusp_classes = None
        self._t_orbits = None
        self._trivial_table = None

    # -- structure ---------------------------------------------------

    def n_arcs(self) -> int:
        return len(self.arcs)

    def vertices(self) -> list[CuspT]:
        return [a[0] for a in self.arcs] + [self.arcs[-1][1]]

    def elliptic3(self) -> list[int]:
        return [i for i, m in enumerate(self.mu) if m == 3]

    def validate(self) -> None:
        n = self.n_arcs()
        if not (len(self.star) == len(self.mu) == len(self.glue) == n):
            raise FareyError("ragged symbol data")
        for i in range(n):
            if self.arcs[i][1] != self.arcs[(i + 1) % n][0]:
                raise FareyError(f"arcs {i} and {i + 1} are not contiguous")
            j = self.star[i]
            if self.star[j] != i:
                raise FareyError("side pairing is not an involution")
            if self.mu[j] != self.mu[i]:
                raise FareyError("side pairing does not preserve elliptic markings")
            g = self.glue[i]
            if not self.member2(g):
                raise FareyError("gluing matrix escapes the group")
            if self.mu[i] in (2, 3):
                if j != i:
                    raise FareyError("elliptic arc must be self-paired")
                if psl2_order(g) != self.mu[i]:
                    raise FareyError("elliptic gluing matrix has the wrong order")
                # gamma maps the far endpoint back to the near one
                if act(g, self.arcs[i][1]) != self.arcs[i][0]:
                    raise FareyError("elliptic gluing fails on endpoints")
            else:
                if j == i:
                    raise FareyError("self-paired arc must carry an elliptic marking")
                if self.glue[j] != minv(g) and self.glue[j] != mneg(minv(g)):
                    raise FareyError("paired gluing matrices are not inverse")
                ps, pe = self.arcs[j]
                if act(g, pe) != self.arcs[i][0] or act(g, ps) != self.arcs[i][1]:
                    raise FareyError("gluing fails on endpoints")
        self.cusp_classes()  # width extraction re-checks stabilizer shape

    # -- tilde arcs ---------------------------------------------------

    def tilde(self) -> list[TildeArc]:
        """Arc list with every elliptic arc split at its fixed point."""
        if self._tilde is not None:
            return self._tilde
        raw = []
        for i, (s, e) in enumerate(self.arcs):
            if self.mu[i] == 1:
                raw.append(TildeArc(("c", s), ("c", e), self.glue[i], i, "whole"))
            else:
                raw.append(TildeArc(("c", s), ("e", i), self.glue[i], i, "u"))
                raw.append(TildeArc(("e", i), ("c", e), minv(self.glue[i]), i, "v"))
        pos = {}
        for t, ta in enumerate(raw):
            pos[(ta.base, ta.half)] = t
        out = []
        for ta in raw:
            if ta.half == "whole":
                star = pos[(self.star[ta.base], "whole")]
            elif ta.half == "u":
                star = pos[(ta.base, "v")]
            else:
                star = pos[(ta.base, "u")]
            out.append(TildeArc(ta.start, ta.end, ta.glue, ta.base, ta.half, star))
        for t, ta in enumerate(out):
            if out[ta.star].star != t:
                raise FareyError("tilde pairing is not a fixed-point-free involution")
            if ta.star == t:
                raise FareyError("tilde pairing has a fixed point")
        self._tilde = out
        return out

    # -- cusp orbits and widths ----------------------------------------

    def cusp_classes(self):
        """Vertex orbits of the polygon which are cusps, with widths.

        Walking origin -> glue^-1 . origin visits each cusp class once;
        the accumulated product is the stabilizer generator conjugate to
        [[1, w], [0, 1]] with w > 0 (anything else is a validation
        failure).  Elliptic fixed points give singleton orbits and are
        skipped.
        """
        if self._cusp_classes is not None:
            return self._cusp_classes
        tilde = self.tilde()
        m = len(tilde)
        seen = [False] * m
        classes = []
        minus_in_group = self.member2(mneg(ID))
        for start in range(m):
            if seen[start]:
                continue
            if tilde[start].start[0] == "e":
                seen[start] = True  # elliptic singleton orbit
                continue
            orbit = []
            i = start
            tau = ID
            while True:
                seen[i] = True
                orbit.append(i)
                tau = mmul(minv(tilde[i].glue), tau)
                i = (tilde[i].star + 1) % m
                if i == start:
                    break
            vertex = tilde[start].start[1]
            g0 = matrix_to_cusp(vertex)
            stab = mmul(minv(g0), tau, g0)
            regular = True
            if stab[0] == -1:
                stab = mneg(stab)
                tau = mneg(tau)  # only valid in the group when -Id is
                regular = minus_in_group
            if stab[0] != 1 or stab[2] != 0 or stab[3] != 1 or stab[1] <= 0:
                raise FareyError(
                    f"cusp orbit at {cusp_str(vertex)} has stabilizer {stab}, "
                    "not a positive translation"
                )
            classes.append(
                CuspClass(vertex, g0, stab[1], tau, regular, tuple(orbit))
            )
        if sum(c.width for c in classes) != self.index:
            raise FareyError("cusp widths do not sum to the group index")
        self._cusp_classes = classes
        return classes

    def invariants(self) -> dict:
        classes = self.cusp_classes()
        nu2 = sum(1 for m in self.mu if m == 2)
        nu3 = sum(1 for m in self.mu if m == 3)
        genus = Fraction(1) + Fraction(self.index, 12) - Fraction(nu2, 4) \
            - Fraction(nu3, 3) - Fraction(len(classes), 2)
        if genus.denominator != 1 or genus < 0:
            raise FareyError(f"inconsistent genus {genus}")
        return {
            "index": self.index,
            "n_cusps": len(classes),
            "nu2": nu2,
            "nu3": nu3,
            "genus": int(genus),
        }

    # -- cusp classification against this symbol's group --------------

    def _translation_orbits(self):
        """Partition of absolute cosets under right multiplication by T."""
        if self._t_orbits is not None:
            return self._t_orbits
        table = self.require_direct_table()
        n = len(table.reps)
        orbit_id = [-1] * n
        orbits = []
        for i in range(n):
            if orbit_id[i] != -1:
                continue
            oid = len(orbits)
            members = []
            j = i
            while orbit_id[j] == -1:
                orbit_id[j] = oid
                members.append(j)
                j = table.class_index(mmul(table.reps[j], T_MAT))
            orbits.append(members)
        self._t_orbits = (orbit_id, orbits)
        return self._t_orbits

    def require_direct_table(self) -> CosetTable:
        if self.table is None:
            # the base symbol: one coset, every matrix is a group element
            if self._trivial_table is None:
                self._trivial_table = CosetTable(
                    GroupSpec(lambda g: True, None, "sl2z"), None
                )
            return self._trivial_table
        parent = self.table.parent_symbol
        if parent is not None and parent.table is not None:
            raise FareyError("operation needs a symbol built directly over SL2(Z)")
        return self.table

    def cusp_class_of(self, c: CuspT):
        """The CuspClass record whose orbit contains the cusp c."""
        table = self.require_direct_table()
        orbit_id, _ = self._translation_orbits()
        target = orbit_id[table.class_index(matrix_to_cusp(c))]
        for cls in self.cusp_classes():
            if orbit_id[table.class_index(cls.g0)] == target:
                return cls
        raise FareyError("cusp matches no class of the symbol")

    def cusp_transporter(self, c: CuspT) -> tuple["CuspClass", Mat]:
        """(class, gamma) with gamma in the group and c = gamma . class vertex."""
        table = self.require_direct_table()
        cls = self.cusp_class_of(c)
        target = table.class_index(cls.g0)
        h = matrix_to_cusp(c)
        for _ in range(self.index + 1):
            if table.class_index(h) == target:
                gamma = mmul(h, minv(cls.g0))
                return cls, _sign_into(self.member, gamma)
            h = mmul(h, T_MAT)
        raise FareyError("translation walk failed to reach the class representative")

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": [cusp_str(v) for v in self.vertices()],
            "star": list(self.star),
            "mu": list(self.mu),
            "glue": [list(g) for g in self.glue],
        }


@dataclass(frozen=True)
class CuspClass:
    vertex: CuspT
    g0: Mat              # sends infinity to the class vertex
    width: int
    tau: Mat             # stabilizer generator, conjugate of [[1, w], [0, 1]]
    regular: bool
    tilde_positions: tuple


def base_symbol_sl2z() -> ExtendedFareySymbol:
    """The two-arc symbol of SL2(Z) with gluing matrices sigma and tau."""
    inf, zero = (1, 0), (0, 1)
    return ExtendedFareySymbol(
        arcs=[(inf, zero), (zero, inf)],
        star=[0, 1],
        mu=[2, 3],
        glue=[SIGMA, TAU],
        index=1,
        member=lambda g: True,
        table=None,
        name="sl2z",
    )


def subgroup_farey(
    parent: ExtendedFareySymbol,
    spec: GroupSpec,
    max_index: int = 100_000,
) -> tuple[ExtendedFareySymbol, CosetTable]:
    """Farey symbol and coset system of a finite-index subgroup.

    `spec.member` must cut out a subgroup of the parent symbol's group;
    the construction raises once more than `max_index` cosets appear,
    which signals infinite index or an inconsistent predicate.
    """
    table = CosetTable(spec, parent)
    pg = parent.glue
    pstar = parent.star
    pmu = parent.mu
    n_parent = parent.n_arcs()
    ell3 = set(parent.elliptic3())

    work3 = deque((0, a) for a in range(n_parent) if a in ell3)
    work = deque((0, a) for a in range(n_parent) if a not in ell3)
    layout = [(0, a) for a in range(n_parent)]
    positions = {lab: i for i, lab in enumerate(layout)}

    def circular_from(after: int, skip: int):
        return [b % n_parent for b in range(after, after + n_parent) if b % n_parent != skip]

    def splice(label, new_coset_indices, order3: bool, attach: int):
        pos = positions.pop(label)
        fresh = []
        for ci in new_coset_indices:
            start = (attach + 1) % n_parent
            for b in circular_from(start, attach):
                fresh.append((ci, b))
        layout[pos:pos + 1] = fresh
        for i, lab in enumerate(layout[pos:], start=pos):
            positions[lab] = i
        # enqueue every arc of the new cosets, following the parent order
        for ci in new_coset_indices:
            for b in range(n_parent):
                if b in ell3:
                    work3.append((ci, b))
        for ci in new_coset_indices:
            for b in range(n_parent):
                if b not in ell3:
                    work.append((ci, b))

    while work3 or work:
        if work3:
            ci, a = work3.popleft()
            g = mmul(table.reps[ci], pg[a])
            g2 = mmul(g, pg[a])
            if table.class_index(g) is not None or table.class_index(g2) is not None:
                # full or partial triangle: leave the arc in place; a
                # partially present triangle completes through other
                # arcs and is rectified as an order-3 pairing orbit
                continue
            i1 = table.add_rep(g)
            i2 = table.add_rep(g2)
            if len(table) > max_index:
                raise FareyError("coset bound exceeded; index too large or not a subgroup")
            splice((ci, a), [i1, i2], True, a)
        else:
            ci, a = work.popleft()
            g = mmul(table.reps[ci], pg[a])
            if table.class_index(g) is not None:
                continue
            i1 = table.add_rep(g)
            if len(table) > max_index:
                raise FareyError("coset bound exceeded; index too large or not a subgroup")
            splice((ci, a), [i1], False, pstar[a])

    # assemble arcs, the induced pairing and gluing data
    arcs, star, mu, glue = [], [], [], []
    pos_of = {lab: i for i, lab in enumerate(layout)}
    ast, raw_glue = {}, {}
    for ci, a in layout:
        xi = table.reps[ci]
        g = mmul(xi, pg[a])
        j, gamma = table.locate(g)
        partner = (j, pstar[a])
        if partner not in pos_of:
            raise FareyError("induced pairing leaves the polygon")
        ast[(ci, a)] = partner
        raw_glue[(ci, a)] = gamma

    records = []
    for ci, a in layout:
        xi = table.reps[ci]
        s, e = parent.arcs[a]
        partner = ast[(ci, a)]
        m = pmu[a] if partner == (ci, a) else 1
        records.append({
            "arc": (act(xi, s), act(xi, e)),
            "mu": m,
            "glue": raw_glue[(ci, a)],
            "partner": partner,
            "label": (ci, a),
        })

    # rectify order-3 orbits of the induced pairing into four plain arcs
    by_label = {r["label"]: r for r in records}
    done = set()
    for r in records:
        lab = r["label"]
        if lab in done:
            continue
        partner = r["partner"]
        if partner == lab or pmu[lab[1]] != 3:
            done.add(lab)
            continue
        lab_b = partner
        lab_c = by_label[lab_b]["partner"]
        if by_label[lab_c]["partner"] != lab:
            raise FareyError("induced pairing on order-3 arcs is not a 3-cycle")
        done.update([lab, lab_b, lab_c])
        ga = r["glue"]
        gc = by_label[lab_c]["glue"]
        if not _is_projective_identity(mmul(ga, by_label[lab_b]["glue"], gc)):
            raise FareyError("order-3 orbit gluing product is not the identity")
        bs, be = by_label[lab_b]["arc"]
        cs, ce = by_label[lab_c]["arc"]
        gci = minv(gc)
        a_prime = {"arc": (act(ga, be), act(ga, bs)), "mu": 1, "glue": ga,
                   "pair_with": lab_b, "label": (lab, "p1")}
        a_second = {"arc": (act(gci, ce), act(gci, cs)), "mu": 1, "glue": gci,
                    "pair_with": lab_c, "label": (lab, "p2")}
        by_label[lab_b]["glue"] = minv(ga)
        by_label[lab_b]["pair_with"] = (lab, "p1")
        by_label[lab_c]["pair_with"] = (lab, "p2")
        r["replace_with"] = [a_prime, a_second]

    final = []
    for r in records:
        if "replace_with" in r:
            final.extend(r["replace_with"])
        else:
            final.append(r)
    index_of = {r["label"]: i for i, r in enumerate(final)}
    for r in final:
        arcs.append(r["arc"])
        mu.append(r["mu"])
        glue.append(_sign_into(spec.member, r["glue"]))
        if "pair_with" in r:
            star.append(index_of[r["pair_with"]])
        else:
            star.append(index_of[r["partner"]])

    sym = ExtendedFareySymbol(
        arcs, star, mu, glue,
        index=parent.index * len(table),
        member=spec.member,
        table=table,
        name=spec.name,
    )
    sym.validate()
    return sym, table


def _is_projective_identity(g: Mat) -> bool:
    return g == ID or g == mneg(ID)


@lru_cache(maxsize=None)
def gamma0_symbol(n: int) -> ExtendedFareySymbol:
    sym, _ = subgroup_farey(base_symbol_sl2z(), gamma0_group(n))
    return sym


@lru_cache(maxsize=None)
def gamma1_symbol(n: int) -> ExtendedFareySymbol:
    sym, _ = subgroup_farey(base_symbol_sl2z(), gamma1_group(n))
    return sym


@lru_cache(maxsize=None)
def gamma_full_symbol(n: int) -> ExtendedFareySymbol:
    sym, _ = subgroup_farey(base_symbol_sl2z(), gamma_full_group(n))
    return sym


# -- words and coset factorization -------------------------------------


def _sl2_word(g: Mat) -> list[Mat]:
    """Factor g in SL2(Z) exactly into sigma/tau letters (with inverses)."""
    a, b, c, d = g
    tokens = []
    while c:
        q = a // c
        tokens.append(("T", q))
        tokens.append(("S",))
        a, b, c, d = c, d, -(a - q * c), -(b - q * d)
    tokens.append(("T", b * a))  # a = d = +/-1 here, so a*b is the shift of +g
    negate = a == -1

    word: list[Mat] = []
    tau_inv = minv(TAU)
    sigma_inv = minv(SIGMA)
    for tok in tokens:
        if tok[0] == "S":
            word.append(SIGMA)
        else:
            nn = tok[1]
            step = [tau_inv, SIGMA] if nn > 0 else [sigma_inv, TAU]
            for _ in range(abs(nn)):
                word.extend(step)
    if negate:
        word.extend([SIGMA, SIGMA])
    prod = ID
    for w in word:
        prod = mmul(prod, w)
    if prod != g:
        raise FareyError("internal word factorization failed")
    return word


def _glue_word(symbol: ExtendedFareySymbol | None, g: Mat) -> list[Mat]:
    """Exact factorization of g into gluing letters of the symbol's group."""
    if symbol is None or symbol.table is None:
        return _sl2_word(g)
    factors, xi = coset_decompose(symbol, g)
    if not _is_projective_identity(xi):
        raise FareyError("matrix is not in the symbol's group")
    if xi != ID:
        factors = factors + [xi]  # -Id is a valid letter, projectively trivial
    return factors


def coset_decompose(symbol: ExtendedFareySymbol, g: Mat) -> tuple[list[Mat], Mat]:
    """Factor g = f_1 ... f_n * xi through the symbol's coset system.

    Each f_i lies in the subgroup (projectively a gluing letter or the
    inverse of one); xi is the coset representative of g up to sign;
    the product reconstructs g exactly.  xi is projectively the
    identity iff g lies in the subgroup (up to sign).
    """
    table = symbol.table
    if table is None:
        raise FareyError("the base symbol has trivial coset structure")
    j = table.class_index(g)
    if j is not None and g in (table.reps[j], mneg(table.reps[j])):
        return [], g
    word = _glue_word(table.parent_symbol, g)
    factors = []
    delta = ID
    sign = 1
    for letter in word:
        nxt = mmul(delta, letter)
        j = table.class_index(nxt)
        if j is None:
            raise FareyError("input matrix leaves the discovered coset system")
        fac = mmul(nxt, table._rep_invs[j])
        if fac == ID:
            pass
        elif fac == mneg(ID):
            sign = -sign
        else:
            norm = _sign_into(table.member, fac)
            if norm != fac:
                sign = -sign
            factors.append(norm)
        delta = table.reps[j]
    xi = delta if sign == 1 else mneg(delta)
    prod = ID
    for f in factors:
        prod = mmul(prod, f)
    if mmul(prod, xi) != g:
        raise FareyError("internal factorization failed to reconstruct the input")
    return factors, xi
