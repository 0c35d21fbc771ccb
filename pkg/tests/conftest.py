import pytest

from movetable.corpora import fibonacci_word, random_text

# The BWT string used for the worked table examples. It is treated as a
# BWT in its own right; the true BWT of GATTAGATACAT$ is EXAMPLE_TRUE_BWT.
EXAMPLE_BWT = b"TTTCGGAA$ATTA"
EXAMPLE_TEXT = b"GATTAGATACAT$"
EXAMPLE_TRUE_BWT = b"TTTCGGAA$AATA"


def small_texts():
    """A handful of short texts (terminator not yet appended)."""
    out = [b"A", b"AAAA", b"ABAB", b"GATTAGATACAT", b"BANANA", b"MISSISSIPPI"]
    out += [random_text(n, s, seed=n * 10 + s) for n in (5, 17, 64, 300) for s in (2, 4, 8)]
    out += [fibonacci_word(n) for n in (8, 55, 233)]
    return out


@pytest.fixture(params=range(len(small_texts())), ids=lambda i: f"text{i}")
def small_text(request):
    return small_texts()[request.param]


# Lines collected by the acceptance tests, echoed at the end of the run so
# they show up without -s.
ACCEPTANCE_LINES = []


def report(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
