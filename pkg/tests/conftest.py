from itertools import product

from grainbound.grain_model import BitWord


def all_words(n):
    return [BitWord(n, v) for v in range(1 << n)]


def words_upto(n_max, n_min=1):
    for n in range(n_min, n_max + 1):
        yield from all_words(n)


def naive_phi(x, t):
    """Sphere straight from the bit rule y_j = x_{j-1} on every admissible pattern."""
    bits = x.bits
    n = len(bits)
    out = set()
    for choice in product((0, 1), repeat=max(n - 1, 0)):
        E = [j + 2 for j, c in enumerate(choice) if c]
        if len(E) > t or any(b - a < 2 for a, b in zip(E, E[1:])):
            continue
        y = list(bits)
        for j in E:
            y[j - 1] = bits[j - 2]
        out.add("".join(map(str, y)))
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
