import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria (exact, tolerance 0)")
    for n, (ok, detail) in sorted(mod.RESULTS.items(), key=lambda kv: (int(str(kv[0]).rstrip("ab")), str(kv[0]))):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
