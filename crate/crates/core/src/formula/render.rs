use super::{Formula, Modality};

/// Surface shape of a core formula after re-sugaring.
enum View<'a> {
    Atom(&'a str),
    Top,
    Bottom,
    Not(&'a Formula),
    Modal(Modality, &'a Formula),
    And(&'a Formula, &'a Formula),
    Or(&'a Formula, &'a Formula),
    Imp(&'a Formula, &'a Formula),
    Iff(&'a Formula, &'a Formula),
}

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn is_negation(f: &Formula) -> bool {
    matches!(f, Formula::Not(_))
}

/// Negations other than `F`, which prints as a constant.
fn shows_negation(f: &Formula) -> bool {
    is_negation(f) && !is_constant(f)
}

/// `O ~a`, which under a negation reads as the dual `~O ~a`.
fn is_dual_body(f: &Formula) -> bool {
    matches!(f, Formula::Modal(_, inner) if is_negation(inner))
}

fn is_constant(f: &Formula) -> bool {
    f.is_top() || f.is_bottom()
}

/// `a -> b`, unless `T` or `F` would be split apart: constants must stay
/// intact to print as constants.
fn implication(f: &Formula) -> Option<(&Formula, &Formula)> {
    if is_constant(f) {
        return None;
    }
    match f {
        Formula::Not(inner) => match inner.as_ref() {
            Formula::And(l, nr) if !is_constant(nr) => match nr.as_ref() {
                Formula::Not(r) => Some((l, r)),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

fn view(f: &Formula) -> View<'_> {
    match f {
        Formula::Atom(name) => View::Atom(name),
        Formula::Not(inner) => {
            if f.is_top() {
                return View::Top;
            }
            if f.is_bottom() {
                return View::Bottom;
            }
            match implication(f) {
                Some((nl @ Formula::Not(l), r))
                    if !shows_negation(l)
                        && !is_dual_body(l)
                        && !shows_negation(r)
                        && matches!(view(nl), View::Not(_)) =>
                {
                    View::Or(l, r)
                }
                Some((l, r)) => View::Imp(l, r),
                None => View::Not(inner),
            }
        }
        Formula::And(l, r) => match (implication(l), implication(r)) {
            (Some((a, b)), Some((b2, a2))) if a == a2 && b == b2 => View::Iff(a, b),
            _ => View::And(l, r),
        },
        Formula::Modal(op, inner) => View::Modal(*op, inner),
    }
}

fn precedence(v: &View<'_>) -> u8 {
    match v {
        View::Iff(..) => IFF,
        View::Imp(..) => IMP,
        View::Or(..) => OR,
        View::And(..) => AND,
        _ => UNARY,
    }
}

fn write(f: &Formula, min_prec: u8, out: &mut String) {
    let v = view(f);
    let paren = precedence(&v) < min_prec;
    if paren {
        out.push('(');
    }
    match v {
        View::Atom(name) => out.push_str(name),
        View::Top => out.push('T'),
        View::Bottom => out.push('F'),
        View::Not(inner) => {
            out.push('~');
            write(inner, UNARY, out);
        }
        View::Modal(op, inner) => {
            out.push_str(op.symbol());
            out.push(' ');
            write(inner, UNARY, out);
        }
        View::And(l, r) => binary(l, " & ", r, AND, UNARY, out),
        View::Or(l, r) => binary(l, " | ", r, OR, AND, out),
        View::Imp(l, r) => binary(l, " -> ", r, OR, IMP, out),
        View::Iff(l, r) => binary(l, " <-> ", r, IMP, IMP, out),
    }
    if paren {
        out.push(')');
    }
}

fn binary(l: &Formula, op: &str, r: &Formula, lp: u8, rp: u8, out: &mut String) {
    write(l, lp, out);
    out.push_str(op);
    write(r, rp, out);
}

/// Renders a formula in concrete syntax with the fewest parentheses the
/// precedence rules allow. Desugared connectives and constants are printed in
/// their surface form; duals are printed expanded (`~S ~p`).
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write(f, IFF, &mut out);
    out
}
