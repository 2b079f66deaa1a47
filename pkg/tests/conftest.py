import sympy
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def to_sympy(terms, symbols, names=None):
    """Dict polynomial to a sympy expression over the given symbol names."""
    syms = sympy.symbols(list(names or symbols)) if symbols else []
    expr = sympy.Integer(0)
    for m, c in terms.items():
        t = sympy.Integer(c)
        for s, e in zip(syms, m):
            t *= s ** e
        expr += t
    return expr, syms


def sympy_poly(terms, symbols, p):
    names = [f"s{i}" for i in range(len(symbols))]
    expr, syms = to_sympy(terms, symbols, names)
    if not syms:
        return sympy.Poly(expr, sympy.Symbol("dummy"), modulus=p)
    return sympy.Poly(expr, *syms, modulus=p)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
