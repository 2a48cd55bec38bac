import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import goldcases  # noqa: E402
from sorani.lexicon import seed_lexicon  # noqa: E402


@pytest.fixture(scope="session")
def lexicon():
    return seed_lexicon()


@pytest.fixture(scope="session")
def analyzer():
    return goldcases.analyzer()


@pytest.fixture(scope="session")
def surface_map(lexicon):
    """Independent oracle: surface -> {(lemma, bundle)} over every verb, bundle and dialect option."""
    from sorani.phonology import realize
    from sorani.verbs import enumerate_bundles, generate_variants

    out = {}
    for lex in lexicon.verbs():
        for f in enumerate_bundles(lex):
            for _, seq in generate_variants(lex, f):
                out.setdefault(realize(seq).surface, set()).add((lex.lemma, f.resolved()))
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
