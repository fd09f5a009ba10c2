import logging
from typing import Dict, List, Optional, Set, Tuple

from splitsuper.exceptions import TheoremViolation
from splitsuper.models.roots import ConnectionWitness, RootDecomposition, RootFunctional, RootPartition, SignedRoot
from splitsuper.services.rootspace_service import require_split

logger = logging.getLogger(__name__)


def canonical(dec: RootDecomposition, functional: RootFunctional) -> Optional[SignedRoot]:
    """The SignedRoot naming a functional of +-Lambda; None outside +-Lambda."""
    index = dec.index_of(functional)
    if index is not None:
        return SignedRoot(index, 1)
    index = dec.index_of(-functional)
    if index is not None:
        return SignedRoot(index, -1)
    return None


def signed_roots(dec: RootDecomposition) -> List[SignedRoot]:
    """All of +-Lambda, each functional once, in canonical order."""
    result = {SignedRoot(i, 1) for i in range(len(dec.roots))}
    for i, root in enumerate(dec.roots):
        result.add(canonical(dec, -root))
    return sorted(result)


def _orbit(dec: RootDecomposition, index: int) -> List[int]:
    orbit = dec.orbit(index)
    if dec.phi_perm[orbit[-1]] != orbit[0]:
        raise TheoremViolation(f"phi-orbit of root {index} leaves the root set", check='ORBIT_CLOSURE')
    return orbit


def _targets(dec: RootDecomposition, beta: int) -> Dict[SignedRoot, Tuple[int, int]]:
    """States matching +-beta phi^-m, mapped to (sign, m)."""
    targets = {}
    for m, j in enumerate(_orbit(dec, beta)):
        for sign in (1, -1):
            state = canonical(dec, dec.roots[j] if sign > 0 else -dec.roots[j])
            targets.setdefault(state, (sign, m))
    return targets


class _Closure:
    """Breadth-first closure of partial sums starting from the phi-orbit of one root."""

    def __init__(self, dec: RootDecomposition, alpha: int):
        self.dec = dec
        self.alpha = alpha
        self.moves = signed_roots(dec)
        self.twisted = {s: s.functional(dec).compose(dec.phi_h0_inverse) for s in self.moves}
        self.predecessor: Dict[SignedRoot, Optional[Tuple[SignedRoot, SignedRoot]]] = {}
        self.start_exponent: Dict[SignedRoot, int] = {}
        self.layers: List[List[SignedRoot]] = []

    def sources(self) -> List[SignedRoot]:
        layer = []
        for n, j in enumerate(_orbit(self.dec, self.alpha)):
            state = SignedRoot(j, 1)
            if state not in self.predecessor:
                self.predecessor[state] = None
                self.start_exponent[state] = n
                layer.append(state)
        return layer

    def step(self, layer: List[SignedRoot]) -> List[SignedRoot]:
        following = []
        for state in layer:
            for move in self.moves:
                total = self.twisted[state] + self.twisted[move]
                if total.is_zero:
                    continue
                reached = canonical(self.dec, total)
                if reached is None or reached in self.predecessor:
                    continue
                self.predecessor[reached] = (state, move)
                following.append(reached)
        return following

    def run(self, stop: Optional[Set[SignedRoot]] = None) -> Optional[SignedRoot]:
        """Expand layer by layer; return the first state in `stop`, if any."""
        layer = self.sources()
        while layer:
            self.layers.append(layer)
            if stop:
                for state in layer:
                    if state in stop:
                        return state
            layer = self.step(layer)
        logger.debug(f"Closure from root {self.alpha}: {len(self.predecessor)} states in {len(self.layers)} layers")
        return None

    def chain_to(self, state: SignedRoot) -> Tuple[List[SignedRoot], List[SignedRoot], int]:
        """(states s_1..s_k, moves alpha_1..alpha_k, start exponent) ending at `state`."""
        states, moves = [state], []
        current = state
        while self.predecessor[current] is not None:
            previous, move = self.predecessor[current]
            moves.append(move)
            states.append(previous)
            current = previous
        states.reverse()
        moves.reverse()
        return states, [states[0]] + moves, self.start_exponent[states[0]]


def reachable_set(dec: RootDecomposition, alpha: int) -> Set[SignedRoot]:
    """
    Every partial sum reachable by a connection starting at alpha.

    Starts from the whole orbit alpha phi^-n and closes under
    s -> s phi^-1 + gamma phi^-1 for gamma in +-Lambda, keeping nonzero
    results that lie in +-Lambda.

    Args:
        dec: A split root decomposition
        alpha: Root index

    Returns:
        Set of SignedRoot states
    """
    require_split(dec)
    closure = _Closure(dec, alpha)
    closure.run()
    return set(closure.predecessor)


def are_connected(dec: RootDecomposition, alpha: int, beta: int) -> bool:
    targets = _targets(dec, beta)
    return not reachable_set(dec, alpha).isdisjoint(targets)


def connection_witness(dec: RootDecomposition, alpha: int, beta: int) -> Optional[ConnectionWitness]:
    """
    A shortest connection from alpha to beta, rebuilt from BFS predecessors.

    Returns:
        ConnectionWitness, or None when alpha is not connected to beta
    """
    require_split(dec)
    targets = _targets(dec, beta)
    closure = _Closure(dec, alpha)
    found = closure.run(stop=set(targets))
    if found is None:
        return None
    states, moves, start_exponent = closure.chain_to(found)
    terminal = states[-1].functional(dec)
    terminal_sign, terminal_exponent = None, None
    for m in range(len(_orbit(dec, beta))):
        for sign in (1, -1):
            shifted = dec.phi_inverse_power(dec.roots[beta], m)
            if terminal == (shifted if sign > 0 else -shifted):
                terminal_sign, terminal_exponent = sign, m
                break
        if terminal_sign is not None:
            break
    return ConnectionWitness(
        source=alpha,
        target=beta,
        chain=tuple(move.functional(dec) for move in moves),
        partial_sums=tuple(state.functional(dec) for state in states),
        start_exponent=start_exponent,
        terminal_sign=terminal_sign,
        terminal_exponent=terminal_exponent,
    )


def _in_signed_roots(dec: RootDecomposition, functional: RootFunctional) -> bool:
    return functional in dec.roots or -functional in dec.roots


def check_witness(dec: RootDecomposition, witness: ConnectionWitness) -> List[str]:
    """
    Re-check a connection directly against its definition.

    Uses the closed form s_t = alpha_1 phi^-(t-1) + sum_{j=2..t} alpha_j phi^-(t-j+1)
    with explicit powers of phi^-1 on H_0, independent of the BFS recurrence.

    Returns:
        Problems found; empty when the witness is a valid connection
    """
    problems = []
    chain = list(witness.chain)
    k = len(chain)
    if k == 0:
        return ["empty chain"]
    inverse = dec.phi_h0_inverse

    def power(functional: RootFunctional, exponent: int) -> RootFunctional:
        if exponent == 0 or dec.rank == 0:
            return functional
        return functional.compose(inverse ** exponent)

    alpha = dec.roots[witness.source]
    beta = dec.roots[witness.target]
    if witness.start_exponent is None or witness.start_exponent < 0:
        problems.append("missing start exponent")
    elif chain[0] != power(alpha, witness.start_exponent):
        problems.append("alpha_1 is not in the phi-orbit of the source")
    for i, member in enumerate(chain):
        if not _in_signed_roots(dec, member):
            problems.append(f"alpha_{i + 1} is not in +-Lambda")

    sums = []
    for t in range(1, k + 1):
        total = power(chain[0], t - 1)
        for j in range(2, t + 1):
            total = total + power(chain[j - 1], t - j + 1)
        sums.append(total)
    for t, total in enumerate(sums[:-1], start=1):
        if total.is_zero or not _in_signed_roots(dec, total):
            problems.append(f"partial sum s_{t} is not in +-Lambda")
    if list(witness.partial_sums) != sums:
        problems.append("recorded partial sums disagree with the closed form")

    if witness.terminal_sign not in (1, -1) or witness.terminal_exponent is None:
        problems.append("missing terminal match")
    else:
        expected = power(beta, witness.terminal_exponent)
        if witness.terminal_sign < 0:
            expected = -expected
        if sums[-1] != expected:
            problems.append("last partial sum does not match +-beta phi^-m")
    return problems


def connection_classes(dec: RootDecomposition) -> RootPartition:
    """
    Partition the roots into connection classes.

    Pairwise connectivity is checked for reflexivity, symmetry and
    transitivity before the classes are formed.

    Raises:
        TheoremViolation: Connectivity is not an equivalence relation on this instance
    """
    require_split(dec)
    count = len(dec.roots)
    reach = [reachable_set(dec, i) for i in range(count)]
    targets = [set(_targets(dec, j)) for j in range(count)]
    connected = [[not reach[i].isdisjoint(targets[j]) for j in range(count)] for i in range(count)]

    for i in range(count):
        if not connected[i][i]:
            raise TheoremViolation(f"Root {i} is not connected to itself", check='EQUIVALENCE_VIOLATION')
        for j in range(count):
            if connected[i][j] != connected[j][i]:
                raise TheoremViolation(f"Connection between roots {i} and {j} is not symmetric",
                                       check='EQUIVALENCE_VIOLATION', details={'pair': [i, j]})
            if not connected[i][j]:
                continue
            for k in range(count):
                if connected[j][k] and not connected[i][k]:
                    logger.error(f"Transitivity fails on roots {i}, {j}, {k}")
                    raise TheoremViolation(f"Connection is not transitive on roots {i}, {j}, {k}",
                                           check='EQUIVALENCE_VIOLATION', details={'triple': [i, j, k]})

    classes: List[Tuple[int, ...]] = []
    assigned: Set[int] = set()
    for i in range(count):
        if i in assigned:
            continue
        members = tuple(j for j in range(count) if connected[i][j])
        assigned.update(members)
        classes.append(members)
    logger.info(f"Found {len(classes)} connection classes over {count} roots")
    return RootPartition(tuple(classes))


def orbit_invariant(dec: RootDecomposition) -> bool:
    """Every root is connected to each member of its phi-orbit, both ways."""
    for i in range(len(dec.roots)):
        for j in _orbit(dec, i):
            if not (are_connected(dec, i, j) and are_connected(dec, j, i)):
                return False
    return True
