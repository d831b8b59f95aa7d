use super::Formula;

// Binding strength; larger binds tighter.
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Atom(_) | Formula::Not(_) | Formula::Box(_) | Formula::Diamond(_) => UNARY,
    }
}

pub(super) fn print(f: &Formula) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn write_operand(f: &Formula, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write(f, out);
        out.push(')');
    } else {
        write(f, out);
    }
}

fn write(f: &Formula, out: &mut String) {
    let (op, lhs, rhs, level, right_assoc) = match f {
        Formula::Atom(name) => {
            out.push_str(name);
            return;
        }
        Formula::Not(a) | Formula::Box(a) | Formula::Diamond(a) => {
            out.push_str(match f {
                Formula::Not(_) => "~",
                Formula::Box(_) => "[]",
                _ => "<>",
            });
            write_operand(a, prec(a) < UNARY, out);
            return;
        }
        Formula::And(a, b) => (" & ", a, b, AND, false),
        Formula::Or(a, b) => (" | ", a, b, OR, false),
        Formula::Implies(a, b) => (" -> ", a, b, IMP, true),
        Formula::Iff(a, b) => (" <-> ", a, b, IFF, true),
    };
    let (lhs_parens, rhs_parens) = if right_assoc {
        (prec(lhs) <= level, prec(rhs) < level)
    } else {
        (prec(lhs) < level, prec(rhs) <= level)
    };
    write_operand(lhs, lhs_parens, out);
    out.push_str(op);
    write_operand(rhs, rhs_parens, out);
}
