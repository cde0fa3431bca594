"""Pure-Python edit-distance kernel, used when the C extension is absent."""


def levenshtein_codepoints(a: str, b: str) -> int:
    """Unit-cost Levenshtein distance over Unicode scalar values."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a):
        current = [i + 1]
        for j, cb in enumerate(b):
            current.append(
                min(
                    previous[j] + (ca != cb),
                    previous[j + 1] + 1,
                    current[j] + 1,
                )
            )
        previous = current
    return previous[-1]
