from typing import Iterable, Iterator

from model.errors import DomainError, SizeLimitError

# A PlayerSet is an int bitmask: bit i set means player i belongs to the set.
PlayerSet = int

EMPTY: PlayerSet = 0
MAX_PLAYERS = 64


def full_set(n: int) -> PlayerSet:
    if not 0 <= n <= MAX_PLAYERS:
        raise SizeLimitError('PlayerSet', n, MAX_PLAYERS)
    return (1 << n) - 1


def check(mask: PlayerSet, n: int, name: str = 'set') -> PlayerSet:
    if mask < 0 or mask >> n:
        raise DomainError('%s %d has players outside 0..%d' % (name, mask, n - 1))
    return mask


def check_disjoint(a: PlayerSet, b: PlayerSet, n: int):
    check(a, n, 'A')
    check(b, n, 'B')
    if a & b:
        raise DomainError('sets %s and %s overlap' % (format_set(a), format_set(b)))


def from_indices(indices: Iterable[int]) -> PlayerSet:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def singleton(i: int) -> PlayerSet:
    return 1 << i


def members(mask: PlayerSet) -> list[int]:
    result = []
    i = 0
    while mask:
        if mask & 1:
            result.append(i)
        mask >>= 1
        i += 1
    return result


def size(mask: PlayerSet) -> int:
    return mask.bit_count()


def is_subset(a: PlayerSet, b: PlayerSet) -> bool:
    return a & ~b == 0


def complement(mask: PlayerSet, n: int) -> PlayerSet:
    return full_set(n) & ~mask


def submasks(mask: PlayerSet) -> list[PlayerSet]:
    """All subsets of mask, empty set included, in ascending mask order."""
    result = []
    sub = mask
    while True:
        result.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    result.reverse()
    return result


def nonempty_subsets(n: int) -> range:
    return range(1, 1 << n)


def disjoint_pairs(n: int, allow_empty_b: bool = False) -> Iterator[tuple[PlayerSet, PlayerSet]]:
    """Disjoint (A, B) pairs with A nonempty, ascending in A then B."""
    full = full_set(n)
    for a in range(1, full + 1):
        for b in submasks(full & ~a):
            if b or allow_empty_b:
                yield a, b


def disjoint_pairs_within(s: PlayerSet) -> Iterator[tuple[PlayerSet, PlayerSet]]:
    """Disjoint nonempty (A, B) pairs with A, B inside s."""
    for a in submasks(s):
        if not a:
            continue
        for b in submasks(s & ~a):
            if b:
                yield a, b


def format_set(mask: PlayerSet, names: list[str] | None = None) -> str:
    labels = [names[i] if names else str(i + 1) for i in members(mask)]
    return '{' + ','.join(labels) + '}'
