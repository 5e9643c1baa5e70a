"""The index pairing against the gauge module, by three routes.

For a partial isometry v of pure gauge degree d with range projection
q_r = v v* and source projection q_s = v* v (both in the core), left
multiplication intertwines the spectral projections of the degree
operator: Phi_k v = v Phi_(k-d).  Every route below reduces through that
identity to a finite window of graded classes [q Phi_j] and is then
evaluated in the limit group:

  odd route        ker/coker of the compression of v* to the nonnegative
                   part: window +[q_r Phi_j], j in [0, d) for d > 0, and
                   -[q_s Phi_j], j in [0, -d) for d < 0;
  half-line route  kernel  +[q_s Phi_j], j in [1-d, 0)
                   minus the three adjoint-kernel summands
                   [q_s Phi_j] over [0, -d), [q_s Phi_(-d)] when d <= 0,
                   and [(1 - q_r) Phi_0],
                   minus the cylinder index -[Phi_0];
  two-term route   +[q_s Phi_j] over [-d, 0) minus [q_s Phi_j] over [0, -d).

The three must agree on every admissible input; the orientation (which of
the two compressions is called the pairing) is fixed once by the rank-one
closed form on the single-vertex graphs and printed in every report.

Inhomogeneous inputs are handled through admissibility: homogeneous
components with pairwise orthogonal ranges and sources split the class
into a sum of homogeneous ones, and blocks of a formal diagonal direct
sum add.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .afcore import (GradedProjection, K0FClass, class_of_graded_projection,
                     class_of_projection, k0f_combine, k0f_equal)
from .algebra import CKElement, is_equal, is_zero
from .errors import AdmissibilityError, HypothesisError, InternalInvariantError
from .graphs import Graph, enumerate_paths, validate_graph

ORIENTATION_NOTE = ("pairing = Index of the compressed adjoint isometry "
                    "(positive on path isometries); fixed by the single-vertex closed form")


def _homogeneous_parts(v: CKElement):
    """Nonzero gauge components of v as a sorted list of (degree, part)."""
    return [(d, v.gauge_component(d)) for d in sorted(v.degrees())]


def check_admissible(blocks) -> list:
    """Diagnostics for the admissibility of a formal diagonal direct sum.

    Each block must be a partial isometry whose homogeneous components are
    pairwise orthogonal (v_d v_e* = 0 = v_d* v_e for d != e); the source
    and range projections of every component then land in the core
    automatically.  Empty list means admissible.
    """
    diagnostics = []
    for idx, v in enumerate(blocks):
        tag = f"block {idx}"
        if not is_equal(v * v.adjoint() * v, v):
            diagnostics.append(f"{tag}: not a partial isometry (v v* v != v)")
        parts = _homogeneous_parts(v)
        for i, (d, vd) in enumerate(parts):
            for e, ve in parts[i + 1:]:
                if not is_zero(vd * ve.adjoint()):
                    diagnostics.append(
                        f"{tag}: components of degrees {d} and {e} have "
                        "non-orthogonal ranges (v_d v_e* != 0)")
                if not is_zero(vd.adjoint() * ve):
                    diagnostics.append(
                        f"{tag}: components of degrees {d} and {e} have "
                        "non-orthogonal sources (v_d* v_e != 0)")
        for d, vd in parts:
            if (vd.adjoint() * vd).degrees() - {0}:
                diagnostics.append(f"{tag}: source projection of degree-{d} part not in the core")
            if (vd * vd.adjoint()).degrees() - {0}:
                diagnostics.append(f"{tag}: range projection of degree-{d} part not in the core")
    return diagnostics


@dataclass(frozen=True)
class AdmissibleIsometry:
    """Formal diagonal direct sum of admissible partial isometries."""

    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise AdmissibilityError(["empty direct sum"])
        g = self.blocks[0].graph
        for b in self.blocks:
            if b.graph is not g:
                raise AdmissibilityError(["blocks live over different graphs"])
        diagnostics = check_admissible(self.blocks)
        if diagnostics:
            raise AdmissibilityError(diagnostics)

    @staticmethod
    def of(element: CKElement) -> "AdmissibleIsometry":
        return AdmissibleIsometry((element,))

    @property
    def graph(self) -> Graph:
        return self.blocks[0].graph

    def components(self):
        """All (degree, homogeneous part) pairs across the blocks."""
        out = []
        for b in self.blocks:
            out.extend(_homogeneous_parts(b))
        return out

    def direct_sum(self, other: "AdmissibleIsometry") -> "AdmissibleIsometry":
        return AdmissibleIsometry(self.blocks + other.blocks)

    def adjoint(self) -> "AdmissibleIsometry":
        return AdmissibleIsometry(tuple(b.adjoint() for b in self.blocks))


def _require_regular(g: Graph):
    props = validate_graph(g)
    if not (props.no_sinks and props.no_sources):
        raise HypothesisError("index pairing needs a graph with no sinks and no sources")


def _check_homogeneous_pisom(v: CKElement):
    degs = v.degrees()
    if len(degs) > 1:
        raise AdmissibilityError([f"element is not gauge homogeneous (degrees {sorted(degs)})"])
    if not is_equal(v * v.adjoint() * v, v):
        raise AdmissibilityError(["element is not a partial isometry"])
    return next(iter(degs)) if degs else 0


def _odd_windows(d: int, q_s: CKElement, q_r: CKElement) -> list:
    if d > 0:
        return [(1, GradedProjection(q_r, j)) for j in range(0, d)]
    if d < 0:
        return [(-1, GradedProjection(q_s, j)) for j in range(0, -d)]
    return []


def homogeneous_pairing(v: CKElement, d: int = None) -> list:
    """Windows of the odd route for a homogeneous partial isometry.

    Returns (sign, GradedProjection) pairs; the class of their sum is the
    pairing.  Degree 0 pairs to nothing; positive degree d contributes the
    range projection on degrees [0, d); negative degree contributes minus
    the source projection on degrees [0, -d).
    """
    checked = _check_homogeneous_pisom(v)
    if d is None:
        d = checked
    elif v.terms and d != checked:
        raise AdmissibilityError([f"declared degree {d} but element has degree {checked}"])
    if not v.terms:
        return []
    return _odd_windows(d, v.adjoint() * v, v * v.adjoint())


def windows_to_class(g: Graph, windows, check: bool = True) -> K0FClass:
    return k0f_combine(g, [(sign, class_of_graded_projection(gp, check=check))
                           for sign, gp in windows])


@dataclass(frozen=True)
class ApsKernelReport:
    """Kernel and cokernel data of the half-line route for one component."""

    ker_class: K0FClass
    adjoint_kernel_classes: tuple  # ordinary, extended, trivial-extended
    index_cylinder: K0FClass
    value: K0FClass
    windows: dict = field(compare=False)


def _aps_windows(g: Graph, d: int, q_s: CKElement, q_r: CKElement):
    """Window lists of the half-line route before class evaluation."""
    one = CKElement.unit(g)
    ker = [(1, GradedProjection(q_s, j)) for j in range(1 - d, 0)]
    adj_ordinary = [(1, GradedProjection(q_s, j)) for j in range(0, -d)]
    adj_extended = [(1, GradedProjection(q_s, -d))] if d <= 0 else []
    adj_trivial = [(1, GradedProjection(one - q_r, 0))]
    cylinder = [(-1, GradedProjection(one, 0))]
    return {"kernel": ker, "adjoint_ordinary": adj_ordinary,
            "adjoint_extended": adj_extended, "adjoint_trivial": adj_trivial,
            "index_cylinder": cylinder}


def _aps_evaluate(g: Graph, win, check: bool) -> ApsKernelReport:
    ker_class = windows_to_class(g, win["kernel"], check=check)
    adj_classes = tuple(windows_to_class(g, win[k], check=check)
                        for k in ("adjoint_ordinary", "adjoint_extended", "adjoint_trivial"))
    cylinder = windows_to_class(g, win["index_cylinder"], check=check)
    value = k0f_combine(g, [(1, ker_class)] + [(-1, c) for c in adj_classes]
                        + [(-1, cylinder)])
    return ApsKernelReport(ker_class, adj_classes, cylinder, value, win)


def aps_kernel_classes(v: CKElement) -> ApsKernelReport:
    """Evaluate the half-line route on one homogeneous partial isometry.

    The route value is kernel class, minus the three adjoint-kernel
    classes, minus the cylinder index (which is minus the class of the
    degree-zero subspace).
    """
    _require_regular(v.graph)
    d = _check_homogeneous_pisom(v)
    win = _aps_windows(v.graph, d, v.adjoint() * v, v * v.adjoint())
    return _aps_evaluate(v.graph, win, check=True)


def _simplified_windows(d: int, q_s: CKElement):
    pos = [(1, GradedProjection(q_s, j)) for j in range(-d, 0)]
    neg = [(-1, GradedProjection(q_s, j)) for j in range(0, -d)]
    return pos + neg


def aps_simplified(v: CKElement) -> K0FClass:
    """Evaluate the two-term route on one homogeneous partial isometry."""
    _require_regular(v.graph)
    d = _check_homogeneous_pisom(v)
    return windows_to_class(v.graph, _simplified_windows(d, v.adjoint() * v))


@dataclass(frozen=True)
class PairingReport:
    odd_route: K0FClass
    aps_route: K0FClass
    simplified_route: K0FClass
    agree: bool
    per_route_breakdown: dict
    orientation: str = ORIENTATION_NOTE

    @property
    def value(self) -> K0FClass:
        if not self.agree:
            raise InternalInvariantError("pairing routes disagree; no canonical value")
        return self.odd_route


def pairing(v) -> PairingReport:
    """All three routes, summed over blocks and homogeneous components.

    Admissibility (checked at construction) certifies every component as a
    partial isometry, so the window projections are projections in the
    core by construction and are evaluated without re-verification.
    """
    if isinstance(v, CKElement):
        v = AdmissibleIsometry.of(v)
    g = v.graph
    _require_regular(g)
    odd_windows = []
    aps_terms = []
    aps_windows = {"kernel": [], "adjoint_ordinary": [], "adjoint_extended": [],
                   "adjoint_trivial": [], "index_cylinder": []}
    simp_windows = []
    for d, part in v.components():
        q_s = part.adjoint() * part
        q_r = part * part.adjoint()
        odd_windows.extend(_odd_windows(d, q_s, q_r))
        win = _aps_windows(g, d, q_s, q_r)
        rep = _aps_evaluate(g, win, check=False)
        aps_terms.append((1, rep.value))
        for key, wins in win.items():
            aps_windows[key].extend(wins)
        simp_windows.extend(_simplified_windows(d, q_s))
    odd = windows_to_class(g, odd_windows, check=False)
    aps = k0f_combine(g, aps_terms)
    simp = windows_to_class(g, simp_windows, check=False)
    agree = k0f_equal(odd, aps) and k0f_equal(odd, simp)
    breakdown = {"odd": odd_windows, "aps": aps_windows, "simplified": simp_windows}
    return PairingReport(odd, aps, simp, agree, breakdown)


def pairing_value(v) -> K0FClass:
    return pairing(v).value


def index_of_cone_generator(g: Graph, edge: int, alpha) -> CKElement:
    """The generator S_e P_alpha as an element (may be zero)."""
    e_elem = CKElement.edge_isometry(g, edge)
    p_alpha = CKElement.path_projection(g, alpha)
    return e_elem * p_alpha


def crosscheck_generators(g: Graph, horizon: int):
    """The generator families used by the route crosscheck, with labels."""
    gens = []
    for n in range(1, horizon + 1):
        for mu in enumerate_paths(g, n):
            gens.append((f"S[{mu}]", CKElement.path_isometry(g, mu), None))
    for e in range(g.n_edges):
        for n in range(1, horizon + 1):
            for alpha in enumerate_paths(g, n):
                if alpha.source != g.edge_range[e]:
                    continue
                elem = index_of_cone_generator(g, e, alpha)
                gens.append((f"S({g.edge_names[e]})P[{alpha}]", elem, None))
    for n in range(1, horizon + 1):
        for mu in enumerate_paths(g, n):
            vbar = CKElement.word(g, mu, mu.shift(1))
            gens.append((f"S[{mu}]S[{mu.shift(1)}]*", vbar, mu))
    return gens


def pairing_crosscheck(g: Graph, horizon: int = 4) -> dict:
    """Three-route agreement on every generator up to the horizon.

    Also checks that the pairing of S_mu S_(sigma mu)* is the class of the
    path projection p_mu, the surjectivity mechanism of the index map.
    """
    _require_regular(g)
    checked = 0
    failures = []
    for label, elem, mu in crosscheck_generators(g, horizon):
        rep = pairing(AdmissibleIsometry.of(elem))
        checked += 1
        if not rep.agree:
            failures.append({
                "generator": label,
                "odd": rep.odd_route,
                "aps": rep.aps_route,
                "simplified": rep.simplified_route,
            })
            continue
        if mu is not None:
            expected = class_of_projection(CKElement.path_projection(g, mu))
            if not k0f_equal(rep.value, expected):
                failures.append({"generator": label,
                                 "odd": rep.odd_route,
                                 "expected_projection_class": expected})
    return {"horizon": horizon, "generators_checked": checked,
            "all_agree": not failures, "failures": failures,
            "orientation": ORIENTATION_NOTE}
