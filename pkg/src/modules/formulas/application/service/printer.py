from src.modules.algebra.domain.entity.term import Term
from src.modules.formulas.domain.entity.formula import And, Eq, Exists, Forall, Formula, Implies, Not, Or, Rel


def print_term(term: Term) -> str:
    return str(term)


def print_formula(formula: Formula) -> str:
    match formula:
        case Eq(left=left, right=right):
            return f"(= {left} {right})"
        case Rel(symbol=symbol, args=args):
            return f"(rel {symbol} {' '.join(str(arg) for arg in args)})"
        case Not(body=body):
            return f"(not {print_formula(body)})"
        case And(parts=parts):
            return f"(and {' '.join(print_formula(part) for part in parts)})"
        case Or(parts=parts):
            return f"(or {' '.join(print_formula(part) for part in parts)})"
        case Implies(premise=premise, conclusion=conclusion):
            return f"(implies {print_formula(premise)} {print_formula(conclusion)})"
        case Exists(variables=vs, body=body):
            return f"(exists ({' '.join(v.name for v in vs)}) {print_formula(body)})"
        case Forall(variables=vs, body=body):
            return f"(forall ({' '.join(v.name for v in vs)}) {print_formula(body)})"
    raise TypeError(f"Not a formula: {formula!r}")
