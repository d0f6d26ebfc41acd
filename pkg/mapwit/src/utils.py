import itertools


def sorted_pair(u, v):
    return (u, v) if u <= v else (v, u)


def powerset(items, min_size=0):
    """All subsets of `items` as tuples, by increasing size."""
    items = list(items)
    return itertools.chain.from_iterable(
        itertools.combinations(items, size)
        for size in range(min_size, len(items) + 1))


def partial_matchings(pairs):
    """All matchings (including the empty one) contained in `pairs`.

    `pairs` is a list of (left, right) tuples; each matching is returned as a
    tuple of pairs in which every left and every right element occurs once.
    """
    pairs = sorted(pairs)
    result = []

    def extend(start, used_left, used_right, chosen):
        result.append(tuple(chosen))
        for i in range(start, len(pairs)):
            left, right = pairs[i]
            if left in used_left or right in used_right:
                continue
            chosen.append(pairs[i])
            extend(i + 1, used_left | {left}, used_right | {right}, chosen)
            chosen.pop()

    extend(0, frozenset(), frozenset(), [])
    return result


def max_clique_size(k):
    """Largest clique a k-map graph can contain."""
    return (3 * k) // 2


def witness_size_bound(real_count, hole_free=False):
    """Maximal vertex count of a compact witness, valid for real_count >= 3."""
    if hole_free:
        return 3 * real_count - 4
    return 6 * real_count - 10
