use std::cmp::Ordering;

use super::monomial_deg;

/// A global monomial order on exponent vectors; variable precedence is the
/// ring's variable order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Pure lexicographic, first variable strongest.
    Lex,
    /// Graded reverse lexicographic.
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.iter().zip(b) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => {
                match monomial_deg(a).cmp(&monomial_deg(b)) {
                    Ordering::Equal => {}
                    o => return o,
                }
                // ties: the last nonzero entry of a - b decides, negated
                for (x, y) in a.iter().zip(b).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl std::fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_and_grevlex_disagree_classically() {
        // x^2 vs x y^2 with x > y: lex says x^2 > x y^2? compare (2,0),(1,2):
        // lex: first entry 2 > 1. grevlex: deg 2 < 3 so x y^2 wins.
        let a = vec![2, 0];
        let b = vec![1, 2];
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::GrevLex.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn grevlex_tiebreak() {
        // deg equal: (1,1,0) vs (0,1,1): last nonzero of a-b = -1 -> a greater
        let a = vec![1, 1, 0];
        let b = vec![0, 1, 1];
        assert_eq!(MonomialOrder::GrevLex.cmp(&a, &b), Ordering::Greater);
        // 1 is minimal
        let one = vec![0, 0, 0];
        assert_eq!(MonomialOrder::GrevLex.cmp(&one, &a), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&one, &a), Ordering::Less);
    }
}
