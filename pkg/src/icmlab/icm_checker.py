"""The I-Cohen-Macaulay condition and its structural relation checks.

A cyclic module M = R/J is I-Cohen-Macaulay when

    grade(I, M) + dim(M/IM) = dim(M).

The inequality <= always holds, so the report carries the nonnegative
defect dim(M) - grade(I, M) - dim(M/IM) and the verdict is defect == 0.

The relation checks each encode one transport statement: how the verdict,
grade, and dimensions move under quotients by regular sequences, under the
annihilator quotient, between nested test ideals, at associated primes,
under localization at a monomial prime, and under polynomial ring
extension.  A check that hypothesizes a property (say, that M is p-CM)
evaluates the hypothesis first and reports a skip when it fails instead of
passing vacuously.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import invariants
from .errors import (
    EngineError,
    InhomogeneousIdealError,
)
from .ideal_engine import (
    Ideal,
    ideal_equal,
    ideal_intersect,
    ideal_quotient,
    ideal_quotient_ideal,
    ideal_sum,
    extend_ring,
    membership,
)
from .invariants import CyclicModule, GradeWitness, MonomialPrime
from .ring_core import Polynomial


@dataclass(frozen=True)
class IcmReport:
    """Everything the decision produces: the certified grade, the two
    dimensions, the defect, and the verdict.  When the module is the whole
    ring the comparison of grade against height comes along too."""

    grade: GradeWitness
    dim_m: int
    dim_m_mod_im: int
    defect: int
    is_icm: bool
    height_i: Optional[int] = None
    grade_equals_height: Optional[bool] = None

    def to_json(self) -> dict:
        return {
            "grade": self.grade.value,
            "dim_m": self.dim_m,
            "dim_m_mod_im": self.dim_m_mod_im,
            "defect": self.defect,
            "is_icm": self.is_icm,
            "witness": [str(x) for x in self.grade.sequence],
            "certificate_exponent": self.grade.certificate.exponent,
        }


@dataclass(frozen=True)
class RelationReport:
    """Outcome of one structural relation check.

    ``holds`` is the verdict for the instance; a report with
    ``skipped_reason`` set was never really evaluated (its hypothesis
    failed) and ``holds`` stays True vacuously.  A failing report always
    carries enough data in ``left``/``right``/``hypothesis_log`` to see
    which equality broke.
    """

    relation_id: str
    holds: bool
    left: object
    right: object
    hypothesis_log: Tuple[str, ...]
    skipped_reason: Optional[str] = None
    counterexample: Optional[str] = None

    @property
    def skipped(self) -> bool:
        return self.skipped_reason is not None

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, IcmReport):
                return v.to_json()
            return v

        return {
            "relation_id": self.relation_id,
            "holds": self.holds,
            "left": enc(self.left),
            "right": enc(self.right),
            "hypothesis_log": list(self.hypothesis_log),
            "skipped_reason": self.skipped_reason,
            "counterexample": self.counterexample,
        }


def icm_report(M: CyclicModule, I: Ideal, budget: int = 200, seed: int = 0) -> IcmReport:
    """Decide whether M = R/J is I-Cohen-Macaulay, with full supporting data.

    The verdict only depends on the ideals, not on how their generator
    lists are written down: everything flows through reduced Groebner
    bases.
    """
    w = invariants.grade(M, I, budget=budget, seed=seed)
    dim_m = invariants.krull_dimension(M)
    quotient = CyclicModule(M.ring, ideal_sum(M.defining_ideal, I))
    dim_mod = invariants.krull_dimension(quotient)
    defect = dim_m - w.value - dim_mod
    height_i = None
    geh = None
    if M.defining_ideal.is_zero_ideal:
        height_i = invariants.height(I)
        geh = w.value == height_i
    return IcmReport(
        grade=w,
        dim_m=dim_m,
        dim_m_mod_im=dim_mod,
        defect=defect,
        is_icm=defect == 0,
        height_i=height_i,
        grade_equals_height=geh,
    )


def is_cohen_macaulay_graded(M: CyclicModule, budget: int = 200, seed: int = 0) -> bool:
    """Classical Cohen-Macaulayness of R/J for homogeneous J, read off at
    the ideal of all variables: depth equals dimension."""
    for g in M.defining_ideal.generators:
        if not g.is_homogeneous():
            raise InhomogeneousIdealError(
                "Cohen-Macaulay test needs homogeneous generators; %s mixes degrees" % g
            )
    ring = M.ring
    mvars = Ideal(ring, [ring.variable(i) for i in range(ring.nvars)])
    w = invariants.grade(M, mvars, budget=budget, seed=seed)
    return w.value == invariants.krull_dimension(M)


def check_grade_height(I: Ideal, budget: int = 200, seed: int = 0) -> RelationReport:
    """If R is I-Cohen-Macaulay then grade(I, R) = height(I).

    One-directional: the converse can fail, so nothing is asserted when the
    verdict is negative.
    """
    ring = I.ring
    M = CyclicModule(ring, Ideal(ring, ()))
    rep = icm_report(M, I, budget=budget, seed=seed)
    log = [
        "grade = %d" % rep.grade.value,
        "height = %d" % rep.height_i,
        "is_icm = %s" % rep.is_icm,
    ]
    if rep.is_icm:
        holds = bool(rep.grade_equals_height)
        log.append("verdict positive, so grade must equal height")
    else:
        holds = True
        log.append("verdict negative, implication is vacuous here")
    return RelationReport(
        relation_id="grade-height",
        holds=holds,
        left=rep,
        right=rep.height_i,
        hypothesis_log=tuple(log),
    )


def quotient_transport(
    M: CyclicModule,
    I: Ideal,
    sequence: Tuple[Polynomial, ...],
    budget: int = 200,
    seed: int = 0,
) -> RelationReport:
    """M is I-CM iff M/(sequence)M is I-CM, for an M-regular sequence inside I;
    the grade drops by exactly the length, dim M drops by exactly the length,
    and dim M/IM does not move.

    The sequence is replayed (membership in I plus colon-stability) before
    anything else; handing in a non-regular sequence is a caller error.
    """
    ring = M.ring
    current = M.defining_ideal
    for k, x in enumerate(sequence):
        if not membership(x, I):
            raise EngineError("sequence element %d is not in the test ideal" % (k + 1,))
        if not ideal_equal(ideal_quotient(current, x), current):
            raise EngineError("sequence element %d is not regular" % (k + 1,))
        current = ideal_sum(current, Ideal(ring, (x,)))
    r = len(sequence)
    base = icm_report(M, I, budget=budget, seed=seed)
    quot = icm_report(CyclicModule(ring, current), I, budget=budget, seed=seed)
    log = [
        "sequence of length %d replayed: in I and regular" % r,
        "base: grade %d, dim %d, dim mod %d, is_icm %s"
        % (base.grade.value, base.dim_m, base.dim_m_mod_im, base.is_icm),
        "quotient: grade %d, dim %d, dim mod %d, is_icm %s"
        % (quot.grade.value, quot.dim_m, quot.dim_m_mod_im, quot.is_icm),
    ]
    holds = (
        base.is_icm == quot.is_icm
        and base.grade.value - quot.grade.value == r
        and base.dim_m - quot.dim_m == r
        and base.dim_m_mod_im == quot.dim_m_mod_im
    )
    return RelationReport(
        relation_id="quotient-transport",
        holds=holds,
        left=base,
        right=quot,
        hypothesis_log=tuple(log),
    )


def subideal_transfer_check(
    M: CyclicModule, I: Ideal, J2: Ideal, budget: int = 200, seed: int = 0
) -> RelationReport:
    """Transfer of the verdict between nested test ideals I and J2:

    (1) with I inside J2: J2-CM and equal grades force I-CM;
    (2) with I inside J2: I-CM and equal dim(M/...) force J2-CM;
    (3) unconditionally: I-CM and J2-CM force (I intersect J2)-CM.
    """
    contained = all(membership(g, J2) for g in I.generators)
    rep_i = icm_report(M, I, budget=budget, seed=seed)
    rep_2 = icm_report(M, J2, budget=budget, seed=seed)
    log = [
        "I: grade %d, dim mod %d, is_icm %s"
        % (rep_i.grade.value, rep_i.dim_m_mod_im, rep_i.is_icm),
        "J2: grade %d, dim mod %d, is_icm %s"
        % (rep_2.grade.value, rep_2.dim_m_mod_im, rep_2.is_icm),
    ]
    violated: List[str] = []
    evaluated = 0
    if contained:
        log.append("containment I inside J2 verified")
        if rep_2.is_icm and rep_i.grade.value == rep_2.grade.value:
            evaluated += 1
            if rep_i.is_icm:
                log.append("part 1 holds: equal grades carried the verdict down")
            else:
                violated.append("part 1: J2-CM with equal grades but not I-CM")
        else:
            log.append("part 1 vacuous: hypothesis not met")
        if rep_i.is_icm and rep_i.dim_m_mod_im == rep_2.dim_m_mod_im:
            evaluated += 1
            if rep_2.is_icm:
                log.append("part 2 holds: equal quotient dimensions carried the verdict up")
            else:
                violated.append("part 2: I-CM with equal quotient dims but not J2-CM")
        else:
            log.append("part 2 vacuous: hypothesis not met")
    else:
        log.append("I is not inside J2; parts 1 and 2 skipped")
    if rep_i.is_icm and rep_2.is_icm:
        inter = ideal_intersect(I, J2)
        if inter.is_zero_ideal:
            log.append("intersection is the zero ideal; part 3 skipped")
        else:
            evaluated += 1
            rep_3 = icm_report(M, inter, budget=budget, seed=seed)
            if rep_3.is_icm:
                log.append("part 3 holds: verdict survives intersecting the test ideals")
            else:
                violated.append("part 3: both verdicts positive but the intersection fails")
    else:
        log.append("part 3 vacuous: needs both verdicts positive")
    log.extend(violated)
    return RelationReport(
        relation_id="subideal-transfer",
        holds=not violated,
        left=rep_i,
        right=rep_2,
        hypothesis_log=tuple(log),
        skipped_reason="every hypothesis failed" if evaluated == 0 else None,
    )


def annihilator_transport(
    M: CyclicModule, I: Ideal, budget: int = 200, seed: int = 0
) -> RelationReport:
    """Quotienting by the annihilator of the image of I preserves the whole
    picture, provided the annihilator sits inside I.

    With J defining M, the annihilator of the image of I in R/J is
    (J : I)/J and the transported module is R/(J : I).  Hypothesis
    (J : I) inside I + J; then M is I-CM iff the transported module is
    I-CM with the same grade and the same dimension.  Regular sequence
    elements that stay out of (J : I) replay on the transported module.
    """
    J = M.defining_ideal
    if all(membership(g, J) for g in I.generators):
        return RelationReport(
            relation_id="annihilator-transport",
            holds=True,
            left=None,
            right=None,
            hypothesis_log=("the test ideal maps to zero in R/J",),
            skipped_reason="the image of the test ideal is zero",
        )
    colon = ideal_quotient_ideal(J, I)
    target = ideal_sum(I, J)
    if not all(membership(g, target) for g in colon.generators):
        return RelationReport(
            relation_id="annihilator-transport",
            holds=True,
            left=None,
            right=None,
            hypothesis_log=("(J : I) is not inside I + J",),
            skipped_reason="annihilator not inside the test ideal plus J",
        )
    log = ["(J : I) verified inside I + J"]
    base = icm_report(M, I, budget=budget, seed=seed)
    trans = icm_report(CyclicModule(M.ring, colon), I, budget=budget, seed=seed)
    log.append(
        "base: grade %d, dim %d, is_icm %s"
        % (base.grade.value, base.dim_m, base.is_icm)
    )
    log.append(
        "transported: grade %d, dim %d, is_icm %s"
        % (trans.grade.value, trans.dim_m, trans.is_icm)
    )
    bundle = (
        trans.is_icm
        and base.grade.value == trans.grade.value
        and base.dim_m == trans.dim_m
    )
    holds = base.is_icm == bundle
    # a base regular sequence with elements outside (J : I) stays regular
    replay = colon
    for k, x in enumerate(base.grade.sequence):
        if membership(x, colon):
            log.append(
                "witness element %d absorbed by the annihilator; replay stops" % (k + 1,)
            )
            break
        if not ideal_equal(ideal_quotient(replay, x), replay):
            holds = False
            log.append(
                "witness element %d fails to stay regular on the transported module"
                % (k + 1,)
            )
            break
        replay = ideal_sum(replay, Ideal(M.ring, (x,)))
        log.append("witness element %d replayed on the transported module" % (k + 1,))
    return RelationReport(
        relation_id="annihilator-transport",
        holds=holds,
        left=base,
        right=trans,
        hypothesis_log=tuple(log),
    )


def ass_dimension_check(
    M: CyclicModule, p: MonomialPrime, budget: int = 200, seed: int = 0
) -> RelationReport:
    """For a p-Cohen-Macaulay module, some associated prime inside p
    realizes the full dimension of M."""
    rep = icm_report(M, p.as_ideal(), budget=budget, seed=seed)
    if not rep.is_icm:
        return RelationReport(
            relation_id="ass-dimension",
            holds=True,
            left=rep,
            right=None,
            hypothesis_log=("module is not p-Cohen-Macaulay",),
            skipped_reason="module is not p-Cohen-Macaulay at the chosen prime",
        )
    ass = invariants.associated_primes_monomial(M.defining_ideal)
    dim_m = rep.dim_m
    matches = sorted(
        q.variables
        for q in ass
        if p.contains(q) and q.quotient_dimension() == dim_m
    )
    log = [
        "module is p-Cohen-Macaulay, dim %d" % dim_m,
        "associated primes: %s" % sorted(q.variables for q in ass),
        "witnessing primes inside p: %s" % matches,
    ]
    return RelationReport(
        relation_id="ass-dimension",
        holds=bool(matches),
        left=rep,
        right=dim_m,
        hypothesis_log=tuple(log),
    )


def localization_cm_check(
    M: CyclicModule, p: MonomialPrime, budget: int = 200, seed: int = 0
) -> RelationReport:
    """For a p-Cohen-Macaulay module the localization at p is classically
    Cohen-Macaulay: grade(p, M) equals the local dimension at p, and the
    grade witness is a system of parameters there."""
    rep = icm_report(M, p.as_ideal(), budget=budget, seed=seed)
    if not rep.is_icm:
        return RelationReport(
            relation_id="localization-cm",
            holds=True,
            left=rep,
            right=None,
            hypothesis_log=("module is not p-Cohen-Macaulay",),
            skipped_reason="module is not p-Cohen-Macaulay at the chosen prime",
        )
    local_dim = invariants.local_dimension(M, p)
    depth = rep.grade.value
    log = [
        "module is p-Cohen-Macaulay",
        "grade at p (local depth) = %d" % depth,
        "local dimension at p = %d" % local_dim,
        "witness length %d plays the system of parameters" % len(rep.grade.sequence),
    ]
    holds = depth == local_dim and len(rep.grade.sequence) == local_dim
    return RelationReport(
        relation_id="localization-cm",
        holds=holds,
        left=rep,
        right=local_dim,
        hypothesis_log=tuple(log),
    )


def _extension_names(ring, k: int) -> Tuple[str, ...]:
    names = []
    taken = set(ring.variables)
    i = 1
    while len(names) < k:
        cand = "t%d" % i
        if cand not in taken:
            names.append(cand)
            taken.add(cand)
        i += 1
    return tuple(names)


def polynomial_extension_check(
    M: CyclicModule, I: Ideal, k_new: int = 1, budget: int = 200, seed: int = 0
) -> RelationReport:
    """Appending polynomial variables preserves the verdict and the grade;
    both dimensions grow by exactly the number of new variables, and for a
    variable-generated prime the height does not move."""
    if k_new < 1:
        raise ValueError("need at least one new variable")
    ring = M.ring
    names = _extension_names(ring, k_new)
    ext_j = extend_ring(M.defining_ideal, names)
    ext_i = extend_ring(I, names)
    ext_m = CyclicModule(ext_j.ring, ext_j)
    base = icm_report(M, I, budget=budget, seed=seed)
    ext = icm_report(ext_m, ext_i, budget=budget, seed=seed)
    log = [
        "extended by %d variable(s): %s" % (k_new, ", ".join(names)),
        "base: grade %d, dim %d, dim mod %d, is_icm %s"
        % (base.grade.value, base.dim_m, base.dim_m_mod_im, base.is_icm),
        "extended: grade %d, dim %d, dim mod %d, is_icm %s"
        % (ext.grade.value, ext.dim_m, ext.dim_m_mod_im, ext.is_icm),
    ]
    if not M.defining_ideal.is_zero_ideal:
        log.append("quotient-module variant (nonzero defining ideal)")
    bundle = ext.is_icm and base.grade.value == ext.grade.value
    holds = (
        base.is_icm == bundle
        and ext.dim_m == base.dim_m + k_new
        and ext.dim_m_mod_im == base.dim_m_mod_im + k_new
    )
    is_var_prime = bool(I.generators) and all(
        g.is_monomial and g.total_degree() == 1 for g in I.generators
    )
    if is_var_prime:
        h_base = invariants.height(I)
        h_ext = invariants.height(ext_i)
        log.append("prime test ideal: height %d base, %d extended" % (h_base, h_ext))
        holds = holds and h_base == h_ext
    return RelationReport(
        relation_id="poly-extension",
        holds=holds,
        left=base,
        right=ext,
        hypothesis_log=tuple(log),
    )


def cm_implies_icm_check(
    M: CyclicModule, I: Ideal, budget: int = 200, seed: int = 0
) -> RelationReport:
    """A classically Cohen-Macaulay graded module is I-CM for every proper
    test ideal I."""
    if not is_cohen_macaulay_graded(M, budget=budget, seed=seed):
        return RelationReport(
            relation_id="cm-implies-icm",
            holds=True,
            left=None,
            right=None,
            hypothesis_log=("module is not Cohen-Macaulay",),
            skipped_reason="module is not Cohen-Macaulay",
        )
    rep = icm_report(M, I, budget=budget, seed=seed)
    log = [
        "module is Cohen-Macaulay",
        "grade %d, dim %d, dim mod %d" % (rep.grade.value, rep.dim_m, rep.dim_m_mod_im),
    ]
    return RelationReport(
        relation_id="cm-implies-icm",
        holds=rep.is_icm,
        left=rep,
        right=None,
        hypothesis_log=tuple(log),
    )
