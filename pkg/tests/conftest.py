import random

import pytest

from virtstrings import random_diagram, random_open_string, random_string


@pytest.fixture
def rng():
    return random.Random(20261016)


def string_corpus(count, max_rank, seed=1):
    r = random.Random(seed)
    return [random_string(r.randint(0, max_rank), r) for _ in range(count)]


def open_corpus(count, max_rank, seed=2):
    r = random.Random(seed)
    return [random_open_string(r.randint(0, max_rank), r) for _ in range(count)]


def diagram_corpus(count, max_rank, seed=3):
    r = random.Random(seed)
    return [random_diagram(r.randint(0, max_rank), r) for _ in range(count)]


def insert_blocks(base, blocks, rng):
    """Drop whole strings into random gaps of ``base``; arrows around them get nontrivial halves."""
    from virtstrings.strings import VirtualString

    code, m = list(base.code), base.rank
    for block in blocks:
        g = rng.randrange(len(code) + 1)
        code = code[:g] + [(a + m, r) for a, r in block.code] + code[g:]
        m += block.rank
    return VirtualString(tuple(code))


def nested_corpus(count, blocks, seed=4):
    from virtstrings import family_pq

    r = random.Random(seed)
    out = []
    for _ in range(count):
        chosen = [family_pq(*r.choice([(1, 2), (2, 1)])) for _ in range(blocks)]
        out.append(insert_blocks(random_string(r.randint(1, 3), r), chosen, r))
    return out


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
