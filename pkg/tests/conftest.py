import pytest

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}


def pytest_collection_modifyitems(config, items):
    # acceptance runs last so its sweeps see everything computed by the other tests
    items.sort(key=lambda item: item.path.name == "test_acceptance.py")


@pytest.fixture
def criterion(request):
    results = request.config.stash[_RESULTS]

    def report(n, checks):
        """``checks`` maps a sub-check name to its list of counterexamples."""
        bad = {name: fails for name, fails in checks.items() if fails}
        line = f"criterion {n}: {'PASS' if not bad else 'FAIL'}"
        if bad:
            line += " (" + "; ".join(f"{k}: {len(v)} failures, e.g. {v[0]}" for k, v in bad.items()) + ")"
        results[n] = line
        print(line)
        return bad

    return report


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_RESULTS, {})
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
