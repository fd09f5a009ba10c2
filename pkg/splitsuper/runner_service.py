"""
Property suite over randomly generated split regular Hom-Lie superalgebras.

Every structural statement the library relies on is re-checked on each
instance; a failure anywhere is recorded instead of aborting the run.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from splitsuper import config
from splitsuper.exceptions import SuperalgebraError
from splitsuper.models.ideals import INCONCLUSIVE, NOT_SIMPLE, ORACLE_INAPPLICABLE, SIMPLE
from splitsuper.models.roots import RootDecomposition, RootPartition
from splitsuper.models.superalgebra import Superalgebra
from splitsuper.services.connection_service import (
    are_connected, check_witness, connection_classes, connection_witness, orbit_invariant
)
from splitsuper.services.decomposition_service import (
    build_class_ideals, center, certify_simple, check_orthogonality, decomposes_along_roots, global_decomposition,
    ideal_support, is_ideal, structure_flags
)
from splitsuper.services.homsuper_service import bracket_span, twist_image, validate
from splitsuper.services.oracle_service import brute_simplicity, fuzz_instance, generate_ideal, separating_element
from splitsuper.services.rootspace_service import (
    check_transport, parity_split_holds, reconstruction_holds, root_decomposition
)
from splitsuper.utils.exactlin import Subspace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteViolation:
    seed: int
    check: str
    message: str

    def to_dict(self) -> Dict[str, Any]:
        return {'seed': self.seed, 'check': self.check, 'message': self.message}


@dataclass
class SuiteReport:
    seeds: int
    max_dim: int
    instances: int = 0
    checks: Dict[str, int] = field(default_factory=dict)
    violations: List[SuiteViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, seed: int, check: str, problems: Sequence[str]) -> None:
        self.checks[check] = self.checks.get(check, 0) + 1
        for problem in problems:
            logger.error(f"Seed {seed}: {check} failed: {problem}")
            self.violations.append(SuiteViolation(seed, check, problem))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'seeds': self.seeds,
            'max_dim': self.max_dim,
            'instances': self.instances,
            'checks': dict(sorted(self.checks.items())),
            'violations': [v.to_dict() for v in self.violations],
        }


@dataclass
class _Instance:
    seed: int
    algebra: Superalgebra
    H: Subspace
    dec: Optional[RootDecomposition] = None
    partition: Optional[RootPartition] = None


def _check_axioms(instance: _Instance) -> List[str]:
    report = validate(instance.algebra)
    return [f"{v.axiom} at {list(v.witness)}" for v in report.violations]


def _check_roots(instance: _Instance) -> List[str]:
    instance.dec = root_decomposition(instance.algebra, instance.H)
    dec = instance.dec
    problems = []
    if not reconstruction_holds(dec):
        problems.append("dim H plus root space dimensions differs from dim L")
    if not parity_split_holds(dec):
        problems.append("some root space is not the sum of its parity parts")
    if sorted(i for i in dec.phi_perm if i is not None) != list(range(len(dec.roots))):
        problems.append("alpha -> alpha phi^-1 is not a permutation of the roots")
    return problems


def _check_transport(instance: _Instance) -> List[str]:
    report = check_transport(instance.dec)
    return [f"{issue.check} on roots {list(issue.roots)}: {issue.detail}" for issue in report.issues]


def _check_connections(instance: _Instance) -> List[str]:
    dec = instance.dec
    instance.partition = connection_classes(dec)
    problems = []
    if not orbit_invariant(dec):
        problems.append("some root is not connected to its phi-orbit")
    for members in instance.partition.classes:
        for a in members:
            for b in members:
                witness = connection_witness(dec, a, b)
                if witness is None:
                    problems.append(f"no witness for connected roots {a} and {b}")
                    continue
                problems.extend(f"witness {a} -> {b}: {p}" for p in check_witness(dec, witness))
    class_of = instance.partition.class_of
    for a in range(len(dec.roots)):
        for b in range(len(dec.roots)):
            if class_of[a] != class_of[b] and are_connected(dec, a, b):
                problems.append(f"roots {a} and {b} are connected across classes")
    return problems


def _check_ideals(instance: _Instance) -> List[str]:
    alg, dec, partition = instance.algebra, instance.dec, instance.partition
    ideals = build_class_ideals(dec, partition)
    problems = []
    full = Subspace.full(alg.dim)
    for ideal in ideals:
        if not ideal.total.contains_subspace(bracket_span(alg, ideal.total, ideal.total)):
            problems.append(f"class ideal {ideal.class_id} is not a subalgebra")
        if twist_image(alg, ideal.total) != ideal.total:
            problems.append(f"class ideal {ideal.class_id} is not phi-invariant")
        if not ideal.total.contains_subspace(bracket_span(alg, ideal.total, full)):
            problems.append(f"class ideal {ideal.class_id} is not an ideal")
    if not check_orthogonality(alg, ideals):
        problems.append("distinct class ideals do not commute")
    decomposition = global_decomposition(dec, partition, ideals)
    if not decomposition.spanning:
        problems.append("U and the class ideals do not span L")
    return problems


def _check_simplicity(instance: _Instance) -> List[str]:
    alg, dec, partition = instance.algebra, instance.dec, instance.partition
    verdict = certify_simple(alg, dec, partition)
    logger.debug(f"Seed {instance.seed}: simplicity {verdict.verdict} via {verdict.method}")
    problems = []
    oracle = brute_simplicity(alg, dec)
    if oracle.verdict != ORACLE_INAPPLICABLE and verdict.verdict in (SIMPLE, NOT_SIMPLE) \
            and oracle.verdict != verdict.verdict:
        problems.append(f"{verdict.method} verdict {verdict.verdict} but the oracle says {oracle.verdict}")
    proper = [ideal.class_id for ideal in build_class_ideals(dec, partition) if 0 < ideal.total.dim < alg.dim]
    if verdict.verdict == SIMPLE and proper:
        problems.append(f"verdict SIMPLE although class ideal {proper[0]} is proper")
    flags = structure_flags(dec, partition)
    if flags.hypotheses:
        if verdict.verdict == SIMPLE and (len(partition) != 1 or not flags.h_generated):
            problems.append(f"verdict SIMPLE with {len(partition)} classes and h_generated={flags.h_generated}")
        if verdict.verdict == INCONCLUSIVE:
            problems.append("verdict INCONCLUSIVE although the hypotheses hold")
    if verdict.verdict == NOT_SIMPLE and verdict.witness is not None:
        witness = verdict.witness
        if not 0 < witness.dim < alg.dim or not is_ideal(alg, witness):
            problems.append(f"witness of dimension {witness.dim} is not a proper ideal")
    return problems


def _check_generated_ideals(instance: _Instance) -> List[str]:
    alg, dec = instance.algebra, instance.dec
    seeds = [space.basis[0] for space in dec.spaces] + list(dec.H.basis)
    problems = []
    z = center(alg)
    for seed in seeds:
        closure = generate_ideal(alg, seed).closure
        if not is_ideal(alg, closure):
            problems.append("generated closure is not an ideal")
        if not decomposes_along_roots(dec, closure):
            problems.append(f"generated ideal of dimension {closure.dim} does not split along root spaces")
        if not ideal_support(dec, closure).reconstructs:
            problems.append(f"generated ideal of dimension {closure.dim} is not rebuilt from its support")
        if dec.H.contains_subspace(closure) and not z.contains_subspace(closure):
            problems.append("ideal inside H is not central")
    return problems


def _check_separation(instance: _Instance) -> List[str]:
    dec = instance.dec
    problems = []
    for a in range(len(dec.roots)):
        for b in range(len(dec.roots)):
            if a != b and separating_element(dec, a, b) is None:
                problems.append(f"no separating element for roots {a} and {b}")
    return problems


CHECKS: List[tuple] = [
    ('AXIOMS', _check_axioms),
    ('ROOT_DECOMPOSITION', _check_roots),
    ('ROOT_TRANSPORT', _check_transport),
    ('CONNECTIONS', _check_connections),
    ('CLASS_IDEALS', _check_ideals),
    ('SIMPLICITY', _check_simplicity),
    ('GENERATED_IDEALS', _check_generated_ideals),
    ('SEPARATING_ELEMENT', _check_separation),
]


def _run_check(report: SuiteReport, instance: _Instance, name: str,
               check: Callable[[_Instance], List[str]]) -> bool:
    try:
        problems = check(instance)
    except SuperalgebraError as e:
        problems = [f"{e.category}: {e.message}"]
    report.record(instance.seed, name, problems)
    return not problems


def run_property_suite(seeds: Optional[int] = None, max_dim: Optional[int] = None,
                       first_seed: int = 0) -> SuiteReport:
    """
    Generate instances from consecutive seeds and check each one.

    Later checks depend on the decomposition built by earlier ones, so the
    remaining checks of an instance are skipped once one fails.

    Args:
        seeds: Number of instances, config.FUZZ_DEFAULT_SEEDS when omitted
        max_dim: Dimension bound, config.FUZZ_DEFAULT_MAX_DIM when omitted
        first_seed: Seed of the first instance

    Returns:
        SuiteReport with per-check run counts and every violation found
    """
    seeds = config.FUZZ_DEFAULT_SEEDS if seeds is None else seeds
    max_dim = config.FUZZ_DEFAULT_MAX_DIM if max_dim is None else max_dim
    report = SuiteReport(seeds=seeds, max_dim=max_dim)
    logger.info(f"Running property suite over {seeds} seeds, max_dim {max_dim}")
    for seed in range(first_seed, first_seed + seeds):
        alg, H = fuzz_instance(seed, max_dim)
        instance = _Instance(seed, alg, H)
        report.instances += 1
        for name, check in CHECKS:
            if not _run_check(report, instance, name, check):
                break
    logger.info(f"Property suite finished: {len(report.violations)} violations")
    return report
