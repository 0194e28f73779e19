from helpers import ACCEPTANCE

CRITERIA = 10


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in range(1, CRITERIA + 1):
        ok, detail = ACCEPTANCE.get(n, (False, "not run or errored"))
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
