"""
Load and save algebra documents.

A document is JSON with every scalar written as a rational string::

    {
      "field": "Q",
      "basis": [{"name": "e1", "parity": 0}, ...],
      "bracket": [{"left": 1, "right": 0, "terms": [[0, "1"]]}, ...],
      "phi": [[source, target, "c"], ...],
      "magsa": [1, 5],
      "regular": true
    }

Only one order of each bracket pair is needed; the other follows from
skew-supersymmetry. A missing "phi" means the identity twist.
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional, Tuple

from splitsuper.exceptions import ConsistencyError, ParseError
from splitsuper.models.superalgebra import Superalgebra, super_sign
from splitsuper.utils.exactlin import Subspace, format_rational, matrix, matrix_rows, parse_rational

logger = logging.getLogger(__name__)

FIELD_TAG = 'Q'


def _index(value: Any, n: int, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: index must be an integer, got {value!r}")
    if not 0 <= value < n:
        raise ParseError(f"{where}: index {value} out of range for dimension {n}")
    return value


def _scalar(value: Any, where: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"{where}: coefficient must be a rational string, got {value!r}")
    try:
        return parse_rational(str(value))
    except ParseError as e:
        raise ParseError(f"{where}: {e.message}") from None


def _require_list(data: Dict[str, Any], key: str, required: bool = True) -> List[Any]:
    if key not in data:
        if required:
            raise ParseError(f"Document has no {key!r} entry")
        return []
    value = data[key]
    if not isinstance(value, list):
        raise ParseError(f"{key!r} must be a list")
    return value


def _parse_basis(entries: List[Any]) -> Tuple[List[str], List[int]]:
    names, parities = [], []
    for position, entry in enumerate(entries):
        where = f"basis[{position}]"
        if not isinstance(entry, dict) or 'name' not in entry or 'parity' not in entry:
            raise ParseError(f"{where}: expected an object with 'name' and 'parity'")
        name, parity = entry['name'], entry['parity']
        if not isinstance(name, str) or not name:
            raise ParseError(f"{where}: name must be a non-empty string")
        if name in names:
            raise ParseError(f"{where}: duplicate basis name {name!r}")
        if isinstance(parity, bool) or parity not in (0, 1):
            raise ParseError(f"{where}: parity must be 0 or 1, got {parity!r}")
        names.append(name)
        parities.append(parity)
    return names, parities


def _parse_bracket(entries: List[Any], n: int) -> Dict[Tuple[int, int], Dict[int, Any]]:
    products: Dict[Tuple[int, int], Dict[int, Any]] = {}
    for position, entry in enumerate(entries):
        where = f"bracket[{position}]"
        if not isinstance(entry, dict) or not {'left', 'right', 'terms'} <= set(entry):
            raise ParseError(f"{where}: expected an object with 'left', 'right' and 'terms'")
        i = _index(entry['left'], n, where)
        j = _index(entry['right'], n, where)
        if not isinstance(entry['terms'], list):
            raise ParseError(f"{where}: terms must be a list")
        terms: Dict[int, Any] = {}
        for term in entry['terms']:
            if not isinstance(term, list) or len(term) != 2:
                raise ParseError(f"{where}: each term is [index, \"coefficient\"]")
            k = _index(term[0], n, where)
            terms[k] = terms.get(k, 0) + _scalar(term[1], where)
        terms = {k: c for k, c in terms.items() if c != 0}
        if (i, j) in products and products[(i, j)] != terms:
            raise ConsistencyError(f"{where}: conflicting duplicate entry for pair ({i}, {j})",
                                   details={'pair': [i, j]})
        products[(i, j)] = terms
    return products


def _parse_phi(entries: List[Any], n: int):
    rows = [[0] * n for _ in range(n)]
    seen: Dict[Tuple[int, int], Any] = {}
    for position, entry in enumerate(entries):
        where = f"phi[{position}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise ParseError(f"{where}: expected [source, target, \"coefficient\"]")
        source = _index(entry[0], n, where)
        target = _index(entry[1], n, where)
        value = _scalar(entry[2], where)
        if (source, target) in seen and seen[(source, target)] != value:
            raise ConsistencyError(f"{where}: conflicting duplicate entry for phi({source}) -> {target}")
        seen[(source, target)] = value
        rows[target][source] = value
    return matrix(rows, n)


def parse_document(data: Any) -> Tuple[Superalgebra, Optional[Subspace]]:
    """
    Build an algebra and optional MAGSA from a decoded document.

    Args:
        data: The decoded JSON object

    Returns:
        (Superalgebra, H or None)

    Raises:
        ParseError: Malformed structure, index, parity, coefficient or field tag
        ConsistencyError: Mirror or duplicate entries disagree
    """
    if not isinstance(data, dict):
        raise ParseError("Document must be a JSON object")
    tag = data.get('field', FIELD_TAG)
    if tag != FIELD_TAG:
        raise ParseError(f"Unsupported field {tag!r}; only {FIELD_TAG!r} is available")

    names, parities = _parse_basis(_require_list(data, 'basis'))
    n = len(names)
    products = _parse_bracket(_require_list(data, 'bracket', required=False), n)
    twist = None
    if data.get('phi') is not None:
        twist = _parse_phi(_require_list(data, 'phi'), n)

    regular = data.get('regular', True)
    if not isinstance(regular, bool):
        raise ParseError(f"'regular' must be true or false, got {regular!r}")

    alg = Superalgebra.from_products(names, parities, products, twist, regular=regular)

    H = None
    if data.get('magsa') is not None:
        from splitsuper.services.homsuper_service import grade
        indices = [_index(i, n, 'magsa') for i in _require_list(data, 'magsa')]
        H = grade(alg, Subspace.coordinate(n, indices))
    logger.info(f"Parsed document: {alg!r}, MAGSA {'given' if H is not None else 'absent'}")
    return alg, H


def load_document(path: str) -> Tuple[Superalgebra, Optional[Subspace]]:
    """Read a document from disk; see parse_document."""
    if not os.path.exists(path):
        raise ParseError(f"No such document: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e}") from None
    return parse_document(data)


def _bracket_entries(alg: Superalgebra) -> List[Dict[str, Any]]:
    entries = []
    for (i, j), terms in sorted(alg.bracket.items()):
        if i > j and (j, i) in alg.bracket:
            sign = -super_sign(alg.parities[i], alg.parities[j])
            if {k: sign * c for k, c in alg.bracket[(j, i)].items()} == terms:
                continue
        entries.append({
            'left': i,
            'right': j,
            'terms': [[k, format_rational(c)] for k, c in sorted(terms.items())],
        })
    return entries


def dump_document(alg: Superalgebra, H: Optional[Subspace] = None) -> Dict[str, Any]:
    """
    Encode an algebra as a document.

    Args:
        alg: The algebra
        H: Optional MAGSA; must be spanned by basis vectors

    Returns:
        JSON-ready dict

    Raises:
        ParseError: H is not a coordinate subspace
    """
    phi = []
    for target, row in enumerate(matrix_rows(alg.twist)):
        for source, value in enumerate(row):
            if value != 0:
                phi.append([source, target, format_rational(value)])
    phi.sort()
    data: Dict[str, Any] = {
        'field': FIELD_TAG,
        'basis': [{'name': name, 'parity': int(p)} for name, p in zip(alg.basis_names, alg.parities)],
        'bracket': _bracket_entries(alg),
        'phi': phi,
        'regular': alg.regular,
    }
    if H is not None:
        indices = list(H.pivots)
        if Subspace.coordinate(alg.dim, indices) != H:
            raise ParseError("Only MAGSAs spanned by basis vectors can be written to a document")
        data['magsa'] = indices
    return data


def save_document(alg: Superalgebra, path: str, H: Optional[Subspace] = None) -> None:
    data = dump_document(alg, H)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2)
        f.write('\n')
    logger.info(f"Saved {alg!r} to {path}")
