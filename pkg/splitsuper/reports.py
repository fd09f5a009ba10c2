"""
Report assembly for the command line.

Every command builds one plain dict; the JSON and text outputs are two
renderings of that same dict.
"""

import json
from typing import Any, Dict, List, Optional, Sequence

from splitsuper import config
from splitsuper.exceptions import SuperalgebraError
from splitsuper.models.ideals import IdealDecomposition, SimpleComponent, SimplicityVerdict, StructureFlags
from splitsuper.models.roots import ConnectionWitness, MagsaReport, RootDecomposition, RootPartition
from splitsuper.models.superalgebra import Superalgebra, ValidationReport
from splitsuper.utils.exactlin import Subspace


def envelope(command: str, body: Dict[str, Any]) -> Dict[str, Any]:
    report = {'schema_version': config.REPORT_SCHEMA_VERSION, 'command': command}
    report.update(body)
    return report


def describe_subspace(alg: Superalgebra, space: Optional[Subspace]) -> List[str]:
    if space is None:
        return []
    return [alg.describe_vector(v) for v in space.basis]


def algebra_summary(alg: Superalgebra) -> Dict[str, Any]:
    return {
        'dim': alg.dim,
        'dim_even': len(alg.even_indices),
        'dim_odd': len(alg.odd_indices),
        'regular': alg.regular,
    }


def validation_report(alg: Superalgebra, report: ValidationReport) -> Dict[str, Any]:
    body = {'algebra': algebra_summary(alg)}
    body.update(report.to_dict(alg))
    body['axioms_violated'] = report.axioms_violated()
    return body


def magsa_report(alg: Superalgebra, report: MagsaReport) -> Dict[str, Any]:
    body = report.to_dict()
    body['extension'] = describe_subspace(alg, report.extension)
    return body


def roots_report(alg: Superalgebra, dec: RootDecomposition, magsa: MagsaReport) -> Dict[str, Any]:
    roots = []
    for i, root in enumerate(dec.roots):
        roots.append({
            'index': i,
            'coordinates': root.to_list(),
            'parity': [p for p in (0, 1) if not dec.part(i, p).is_zero],
            'even_basis': describe_subspace(alg, dec.part(i, 0)),
            'odd_basis': describe_subspace(alg, dec.part(i, 1)),
            'phi_inverse_image': dec.phi_perm[i],
        })
    return {
        'algebra': algebra_summary(alg),
        'magsa': magsa_report(alg, magsa),
        'H': describe_subspace(alg, dec.H),
        'h_basis': [alg.describe_vector(h) for h in dec.h_basis],
        'split': dec.is_split,
        'roots': roots,
        'even_roots': list(dec.even_roots()),
        'odd_roots': list(dec.odd_roots()),
        'phi_cycles': dec.perm_cycles(),
    }


def partition_report(partition: RootPartition) -> Dict[str, Any]:
    return {
        'class_count': len(partition),
        'classes': [
            {'class_id': c, 'label': min(members), 'roots': list(members)}
            for c, members in enumerate(partition.classes)
        ],
    }


def connections_report(partition: RootPartition, pair: Optional[Sequence[int]] = None,
                       connected: Optional[bool] = None,
                       witnesses: Optional[List[Optional[ConnectionWitness]]] = None) -> Dict[str, Any]:
    body = partition_report(partition)
    if pair is not None:
        body['pair'] = {'source': pair[0], 'target': pair[1], 'connected': connected}
    if witnesses is not None:
        body['witnesses'] = [w.to_dict() for w in witnesses if w is not None]
    return body


def decomposition_report(alg: Superalgebra, partition: RootPartition,
                         decomposition: IdealDecomposition) -> Dict[str, Any]:
    body = partition_report(partition)
    body.update({
        'U': describe_subspace(alg, decomposition.U),
        'dim_U': decomposition.U.dim,
        'ideals': [
            dict(ideal.to_dict(), basis=describe_subspace(alg, ideal.total))
            for ideal in decomposition.ideals
        ],
        'spanning': decomposition.spanning,
        'direct_sum': decomposition.direct_sum,
        'pairwise_orthogonal': decomposition.pairwise_orthogonal,
    })
    return body


def simplicity_report(alg: Superalgebra, flags: StructureFlags, verdict: SimplicityVerdict) -> Dict[str, Any]:
    body = {
        'flags': flags.to_dict(),
        'verdict': verdict.verdict,
        'method': verdict.method,
        'reasons': list(verdict.reasons),
        'witness': describe_subspace(alg, verdict.witness),
    }
    if verdict.oracle is not None:
        body['oracle'] = {'verdict': verdict.oracle.verdict, 'reasons': list(verdict.oracle.reasons)}
    return body


def components_report(alg: Superalgebra, components: Sequence[SimpleComponent]) -> Dict[str, Any]:
    return {
        'component_count': len(components),
        'components': [
            {
                'class_id': component.ideal.class_id,
                'dim': component.algebra.dim,
                'basis': describe_subspace(alg, component.ideal.total),
                'H': describe_subspace(component.algebra, component.H),
                'verdict': component.verdict.verdict,
                'method': component.verdict.method,
            }
            for component in components
        ],
    }


def error_report(error: SuperalgebraError) -> Dict[str, Any]:
    return {'error': error.to_dict(), 'exit_code': error.exit_code}


def to_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2)


def _scalar_text(value: Any) -> str:
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, list):
        return '(' + ', '.join(_scalar_text(v) for v in value) + ')'
    return str(value)


def _is_flat(value: Any) -> bool:
    return not isinstance(value, (dict, list)) or (
        isinstance(value, list) and all(not isinstance(v, dict) and _is_flat(v) for v in value)
    )


def _render(value: Any, indent: int, lines: List[str]) -> None:
    pad = '  ' * indent
    if isinstance(value, dict):
        for key, item in value.items():
            if _is_flat(item):
                lines.append(f"{pad}{key}: {_scalar_text(item)}")
            else:
                lines.append(f"{pad}{key}:")
                _render(item, indent + 1, lines)
    elif isinstance(value, list):
        for item in value:
            if _is_flat(item):
                lines.append(f"{pad}- {_scalar_text(item)}")
            else:
                lines.append(f"{pad}-")
                _render(item, indent + 1, lines)
    else:
        lines.append(f"{pad}{_scalar_text(value)}")


def render_text(report: Dict[str, Any]) -> str:
    """Indented key/value rendering of a report dict, in key order."""
    lines: List[str] = []
    _render(report, 0, lines)
    return '\n'.join(lines)
