use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A propositional or ground-predicate-logic literal: an atom plus a negation
/// flag. Atoms are opaque identifier strings; `bird(tweety)` is accepted as a
/// single atom and never inspected further.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    atom: String,
    negated: bool,
}

impl Literal {
    pub fn new(atom: impl Into<String>, negated: bool) -> Self {
        let atom = atom.into();
        assert!(!atom.is_empty(), "literal atom must be non-empty");
        Literal { atom, negated }
    }

    pub fn positive(atom: impl Into<String>) -> Self {
        Literal::new(atom, false)
    }

    pub fn negative(atom: impl Into<String>) -> Self {
        Literal::new(atom, true)
    }

    pub fn atom(&self) -> &str {
        &self.atom
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    /// The complementary literal: `p` for `~p` and vice versa. An involution.
    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            negated: !self.negated,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~{}", self.atom)
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

pub(crate) fn is_valid_atom(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !(first.is_ascii_alphabetic() || first == '_') {
        return false;
    }
    // A parenthesised argument list (ground predicates) is carried verbatim.
    let mut depth = 0usize;
    for c in chars {
        match c {
            '(' => depth += 1,
            ')' => {
                if depth == 0 {
                    return false;
                }
                depth -= 1;
            }
            c if c.is_ascii_alphanumeric() || c == '_' || c == ',' => {}
            _ => return false,
        }
    }
    depth == 0
}

impl FromStr for Literal {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negated, atom) = match s.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        if !is_valid_atom(atom) {
            return Err(format!("invalid literal `{s}`"));
        }
        Ok(Literal::new(atom, negated))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_flips_and_is_involutive() {
        let p = Literal::positive("p");
        assert_eq!(p.complement(), Literal::negative("p"));
        assert_eq!(Literal::negative("p").complement(), p);
        let q = Literal::positive("q");
        assert_eq!(q.complement().complement(), q);
    }

    #[test]
    fn parses_and_displays() {
        assert_eq!("~p".parse::<Literal>().unwrap(), Literal::negative("p"));
        assert_eq!(Literal::negative("p").to_string(), "~p");
        assert_eq!(
            "bird(tweety)".parse::<Literal>().unwrap(),
            Literal::positive("bird(tweety)")
        );
        assert!("".parse::<Literal>().is_err());
        assert!("~".parse::<Literal>().is_err());
        assert!("2p".parse::<Literal>().is_err());
        assert!("p q".parse::<Literal>().is_err());
    }
}
