//! The line-oriented theory format and its printer.
//!
//! ```text
//! # comments run to end of line
//! axiom  <id>: <literal>                      (weight implicitly 1)
//! prem   <id>: <literal> w=<float>            (w in [0, 1))
//! strict <id>: <lit>{, <lit>} -> <lit>        (weight implicitly 1)
//! defeas <id>: <lit>{, <lit>} => <lit> w=<float>
//! ```
//!
//! A literal is `~`-prefixed or bare; rules may have empty antecedent lists.
//! Parsing never yields a partial theory: every problem is reported as a
//! diagnostic with a line and column.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{
    BasisElement, InferenceRule, KnowledgeBase, Literal, WeightedArgumentationTheory,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    /// 1-based line.
    pub line: usize,
    /// 1-based column.
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub span: Span,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}",
            self.span.line, self.span.column, self.message
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StatementBody {
    Axiom {
        literal: Literal,
    },
    Premise {
        literal: Literal,
        weight: f64,
    },
    StrictRule {
        antecedents: Vec<Literal>,
        consequent: Literal,
    },
    DefeasibleRule {
        antecedents: Vec<Literal>,
        consequent: Literal,
        weight: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub id: String,
    pub body: StatementBody,
    pub span: Span,
}

/// A parsed theory file: statements in source order. `parse(print(doc))`
/// reproduces the document, spans aside.
#[derive(Debug, Clone)]
pub struct TheoryDocument {
    pub statements: Vec<Statement>,
}

impl PartialEq for TheoryDocument {
    fn eq(&self, other: &Self) -> bool {
        self.statements.len() == other.statements.len()
            && self
                .statements
                .iter()
                .zip(&other.statements)
                .all(|(a, b)| a.id == b.id && a.body == b.body)
    }
}

impl TheoryDocument {
    pub fn to_theory(&self) -> WeightedArgumentationTheory {
        let mut axioms = Vec::new();
        let mut ordinary = Vec::new();
        let mut rules = Vec::new();
        let mut weights = Vec::new();
        for stmt in &self.statements {
            match &stmt.body {
                StatementBody::Axiom { literal } => {
                    weights.push((BasisElement::Premise(literal.clone()), 1.0));
                    axioms.push(literal.clone());
                }
                StatementBody::Premise { literal, weight } => {
                    weights.push((BasisElement::Premise(literal.clone()), *weight));
                    ordinary.push(literal.clone());
                }
                StatementBody::StrictRule {
                    antecedents,
                    consequent,
                } => {
                    let rule = InferenceRule::strict(
                        stmt.id.as_str(),
                        antecedents.iter().cloned(),
                        consequent.clone(),
                    );
                    weights.push((BasisElement::Rule(rule.id().clone()), 1.0));
                    rules.push(rule);
                }
                StatementBody::DefeasibleRule {
                    antecedents,
                    consequent,
                    weight,
                } => {
                    let rule = InferenceRule::defeasible(
                        stmt.id.as_str(),
                        antecedents.iter().cloned(),
                        consequent.clone(),
                    );
                    weights.push((BasisElement::Rule(rule.id().clone()), *weight));
                    rules.push(rule);
                }
            }
        }
        WeightedArgumentationTheory::new(rules, KnowledgeBase::new(axioms, ordinary), weights)
    }
}

/// Render a theory back into a document: axioms, ordinary premises, then
/// rules in theory order. Premise statements get synthesized ids.
pub fn document_from_theory(theory: &WeightedArgumentationTheory) -> TheoryDocument {
    let span = Span { line: 1, column: 1 };
    let mut used: BTreeSet<String> = theory.rules().map(|r| r.id().to_string()).collect();
    let mut fresh = |stem: &str, i: usize| {
        let mut candidate = format!("{stem}{i}");
        while !used.insert(candidate.clone()) {
            candidate.push('x');
        }
        candidate
    };
    let mut statements = Vec::new();
    for (i, literal) in theory.kb().axioms().iter().enumerate() {
        statements.push(Statement {
            id: fresh("k", i),
            body: StatementBody::Axiom {
                literal: literal.clone(),
            },
            span,
        });
    }
    for (i, literal) in theory.kb().ordinary().iter().enumerate() {
        let weight = theory.premise_weight(literal).unwrap_or(0.0);
        statements.push(Statement {
            id: fresh("o", i),
            body: StatementBody::Premise {
                literal: literal.clone(),
                weight,
            },
            span,
        });
    }
    for rule in theory.rules() {
        let antecedents: Vec<Literal> = rule.antecedents().iter().cloned().collect();
        let consequent = rule.consequent().clone();
        let body = if rule.is_strict() {
            StatementBody::StrictRule {
                antecedents,
                consequent,
            }
        } else {
            StatementBody::DefeasibleRule {
                antecedents,
                consequent,
                weight: theory.rule_weight(rule.id()).unwrap_or(0.0),
            }
        };
        statements.push(Statement {
            id: rule.id().to_string(),
            body,
            span,
        });
    }
    TheoryDocument { statements }
}

/// Canonical text form; floats print in shortest round-trip notation.
pub fn print_theory(doc: &TheoryDocument) -> String {
    let mut out = String::new();
    for stmt in &doc.statements {
        let line = match &stmt.body {
            StatementBody::Axiom { literal } => format!("axiom {}: {}", stmt.id, literal),
            StatementBody::Premise { literal, weight } => {
                format!("prem {}: {} w={}", stmt.id, literal, weight)
            }
            StatementBody::StrictRule {
                antecedents,
                consequent,
            } => {
                format!(
                    "strict {}: {} -> {}",
                    stmt.id,
                    join_literals(antecedents),
                    consequent
                )
            }
            StatementBody::DefeasibleRule {
                antecedents,
                consequent,
                weight,
            } => {
                format!(
                    "defeas {}: {} => {} w={}",
                    stmt.id,
                    join_literals(antecedents),
                    consequent,
                    weight
                )
            }
        };
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn join_literals(lits: &[Literal]) -> String {
    lits.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Parse a theory document, reporting every diagnostic found.
pub fn parse_theory(text: &str) -> Result<TheoryDocument, Vec<Diagnostic>> {
    let mut statements = Vec::new();
    let mut diagnostics = Vec::new();
    let mut seen_ids: BTreeSet<String> = BTreeSet::new();
    let mut seen_premises: BTreeSet<Literal> = BTreeSet::new();

    for (line_no, raw_line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let mut parser = LineParser::new(line, line_no);
        match parser.statement() {
            Ok(mut stmt) => {
                if !seen_ids.insert(stmt.id.clone()) {
                    diagnostics.push(Diagnostic {
                        span: stmt.span,
                        message: format!("duplicate id `{}`", stmt.id),
                    });
                    continue;
                }
                if let StatementBody::Axiom { literal } | StatementBody::Premise { literal, .. } =
                    &stmt.body
                {
                    if !seen_premises.insert(literal.clone()) {
                        diagnostics.push(Diagnostic {
                            span: stmt.span,
                            message: format!("premise `{literal}` already declared"),
                        });
                        continue;
                    }
                }
                stmt.span = Span {
                    line: line_no,
                    column: 1,
                };
                statements.push(stmt);
            }
            Err(diag) => diagnostics.push(diag),
        }
    }

    if statements.is_empty() && diagnostics.is_empty() {
        diagnostics.push(Diagnostic {
            span: Span { line: 1, column: 1 },
            message: "empty theory".into(),
        });
    }
    if diagnostics.is_empty() {
        Ok(TheoryDocument { statements })
    } else {
        Err(diagnostics)
    }
}

struct LineParser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl LineParser {
    fn new(text: &str, line: usize) -> Self {
        LineParser {
            chars: text.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn span(&self) -> Span {
        Span {
            line: self.line,
            column: self.pos + 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            span: self.span(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), Diagnostic> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn identifier(&mut self, what: &str) -> Result<String, Diagnostic> {
        let w = self.word();
        if w.is_empty() {
            return Err(self.error(format!("expected {what}")));
        }
        Ok(w)
    }

    fn literal(&mut self) -> Result<Literal, Diagnostic> {
        let negated = if self.peek() == Some('~') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let mut atom = self.word();
        if atom.is_empty() {
            return Err(self.error("expected a literal"));
        }
        if self.peek() == Some('(') {
            // Opaque ground-predicate arguments: copy through to `)`.
            let mut depth = 0usize;
            loop {
                match self.bump() {
                    Some('(') => {
                        depth += 1;
                        atom.push('(');
                    }
                    Some(')') => {
                        depth -= 1;
                        atom.push(')');
                        if depth == 0 {
                            break;
                        }
                    }
                    Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == ',' => atom.push(c),
                    _ => {
                        return Err(Diagnostic {
                            span: Span {
                                line: self.line,
                                column: start + 1,
                            },
                            message: "unterminated predicate argument list".into(),
                        })
                    }
                }
            }
        }
        if atom.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            return Err(Diagnostic {
                span: Span {
                    line: self.line,
                    column: start + 1,
                },
                message: format!("literal `{atom}` must start with a letter or `_`"),
            });
        }
        Ok(Literal::new(atom, negated))
    }

    fn weight(&mut self) -> Result<f64, Diagnostic> {
        self.skip_ws();
        let start_span = self.span();
        let w = self.word();
        if w != "w" {
            return Err(Diagnostic {
                span: start_span,
                message: "expected `w=<float>`".into(),
            });
        }
        self.expect('=')?;
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.' || c == '-' || c == '+' || c == 'e' || c == 'E')
        {
            self.pos += 1;
        }
        let raw: String = self.chars[start..self.pos].iter().collect();
        raw.parse::<f64>().map_err(|_| Diagnostic {
            span: Span {
                line: self.line,
                column: start + 1,
            },
            message: format!("`{raw}` is not a number"),
        })
    }

    fn end_of_line(&mut self) -> Result<(), Diagnostic> {
        self.skip_ws();
        if self.pos < self.chars.len() {
            let rest: String = self.chars[self.pos..].iter().collect();
            return Err(self.error(format!("unexpected trailing input `{}`", rest.trim())));
        }
        Ok(())
    }

    fn literal_list_until_arrow(&mut self, arrow: &str) -> Result<Vec<Literal>, Diagnostic> {
        let mut lits = Vec::new();
        self.skip_ws();
        if self.lookahead_arrow(arrow) {
            self.consume_arrow(arrow);
            return Ok(lits);
        }
        loop {
            self.skip_ws();
            lits.push(self.literal()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                }
                _ if self.lookahead_arrow(arrow) => {
                    self.consume_arrow(arrow);
                    return Ok(lits);
                }
                _ => return Err(self.error(format!("expected `,` or `{arrow}`"))),
            }
        }
    }

    fn lookahead_arrow(&self, arrow: &str) -> bool {
        let remaining: String = self.chars[self.pos.min(self.chars.len())..]
            .iter()
            .collect();
        remaining.starts_with(arrow)
    }

    fn consume_arrow(&mut self, arrow: &str) {
        self.pos += arrow.chars().count();
    }

    fn statement(&mut self) -> Result<Statement, Diagnostic> {
        self.skip_ws();
        let span = self.span();
        let keyword = self.identifier("a statement keyword")?;
        self.skip_ws();
        let id = self.identifier("a statement id")?;
        self.skip_ws();
        self.expect(':')?;
        self.skip_ws();
        let body = match keyword.as_str() {
            "axiom" => {
                let literal = self.literal()?;
                self.reject_weight("axioms always weigh 1")?;
                StatementBody::Axiom { literal }
            }
            "prem" => {
                let literal = self.literal()?;
                let weight = self.weight()?;
                if !(0.0..1.0).contains(&weight) {
                    return Err(Diagnostic {
                        span,
                        message: format!("ordinary premise weight must be in [0, 1), got {weight}"),
                    });
                }
                StatementBody::Premise { literal, weight }
            }
            "strict" => {
                let antecedents = self.literal_list_until_arrow("->")?;
                self.skip_ws();
                let consequent = self.literal()?;
                self.reject_weight("strict rules always weigh 1")?;
                StatementBody::StrictRule {
                    antecedents,
                    consequent,
                }
            }
            "defeas" => {
                let antecedents = self.literal_list_until_arrow("=>")?;
                self.skip_ws();
                let consequent = self.literal()?;
                let weight = self.weight()?;
                if !(0.0..1.0).contains(&weight) {
                    return Err(Diagnostic {
                        span,
                        message: format!("defeasible rule weight must be in [0, 1), got {weight}"),
                    });
                }
                StatementBody::DefeasibleRule {
                    antecedents,
                    consequent,
                    weight,
                }
            }
            other => {
                return Err(Diagnostic {
                    span,
                    message: format!(
                        "unknown statement `{other}` (expected axiom, prem, strict, or defeas)"
                    ),
                })
            }
        };
        self.end_of_line()?;
        Ok(Statement { id, body, span })
    }

    fn reject_weight(&mut self, why: &str) -> Result<(), Diagnostic> {
        let save = self.pos;
        self.skip_ws();
        if self.lookahead_arrow("w=") {
            return Err(self.error(format!("unexpected weight: {why}")));
        }
        self.pos = save;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TWEETY: &str = "\
# the bird example
axiom k1: bird
defeas d1: bird => flies w=0.95
defeas d2: bird => yellow w=0.05
strict s1: bird -> animal
";

    #[test]
    fn parses_the_bird_example() {
        let doc = parse_theory(TWEETY).unwrap();
        assert_eq!(doc.statements.len(), 4);
        let theory = doc.to_theory();
        assert!(theory.validate().is_valid());
        assert_eq!(
            theory.rule_weight(&crate::model::RuleId::new("d1")),
            Some(0.95)
        );
    }

    #[test]
    fn premise_weight_must_be_below_one() {
        let err = parse_theory("prem p: q w=1.0\n").unwrap_err();
        assert!(err[0].message.contains("must be in [0, 1)"), "{err:?}");
        assert_eq!(err[0].span.line, 1);
    }

    #[test]
    fn empty_file_is_a_diagnostic() {
        let err = parse_theory("# nothing here\n").unwrap_err();
        assert_eq!(err[0].message, "empty theory");
    }

    #[test]
    fn weight_on_strict_line_is_rejected() {
        let err = parse_theory("strict s1: a -> b w=0.9\n").unwrap_err();
        assert!(err[0].message.contains("strict rules always weigh 1"));
    }

    #[test]
    fn duplicate_ids_and_premises_are_rejected() {
        let err = parse_theory("axiom a1: p\nprem a1: q w=0.5\n").unwrap_err();
        assert!(err[0].message.contains("duplicate id"));
        let err = parse_theory("axiom a1: p\nprem o1: p w=0.5\n").unwrap_err();
        assert!(err[0].message.contains("already declared"));
    }

    #[test]
    fn empty_antecedent_lists_parse() {
        let doc = parse_theory("strict s1: -> t\naxiom a1: u\n").unwrap();
        match &doc.statements[0].body {
            StatementBody::StrictRule {
                antecedents,
                consequent,
            } => {
                assert!(antecedents.is_empty());
                assert_eq!(consequent, &Literal::positive("t"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ground_predicate_atoms_are_opaque() {
        let doc = parse_theory("axiom a1: bird(tweety)\n").unwrap();
        match &doc.statements[0].body {
            StatementBody::Axiom { literal } => {
                assert_eq!(literal.atom(), "bird(tweety)");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn every_diagnostic_is_reported() {
        let err = parse_theory("axiom a1 p\nbogus x: y\nprem p2: q w=2\n").unwrap_err();
        assert_eq!(err.len(), 3);
        assert!(err.iter().all(|d| d.span.line > 0 && d.span.column > 0));
    }

    #[test]
    fn print_then_parse_is_identity() {
        let doc = parse_theory(TWEETY).unwrap();
        let printed = print_theory(&doc);
        let reparsed = parse_theory(&printed).unwrap();
        assert_eq!(doc, reparsed);
        assert_eq!(printed, print_theory(&reparsed));
    }

    fn arb_literal() -> BoxedStrategy<Literal> {
        ((0u32..1000), any::<bool>())
            .prop_map(|(i, n)| {
                let atom = format!("v{i}");
                if n {
                    Literal::negative(atom)
                } else {
                    Literal::positive(atom)
                }
            })
            .boxed()
    }

    fn arb_weight() -> BoxedStrategy<f64> {
        (0u32..1000).prop_map(|i| f64::from(i) / 1000.0).boxed()
    }

    fn arb_statement(idx: usize) -> impl Strategy<Value = (String, StatementBody)> {
        prop_oneof![
            arb_literal()
                .prop_map(move |l| { (format!("id{idx}"), StatementBody::Axiom { literal: l }) }),
            (arb_literal(), arb_weight()).prop_map(move |(l, w)| {
                (
                    format!("id{idx}"),
                    StatementBody::Premise {
                        literal: l,
                        weight: w,
                    },
                )
            }),
            (
                proptest::collection::vec(arb_literal(), 0..3),
                arb_literal()
            )
                .prop_map(move |(a, c)| {
                    (
                        format!("id{idx}"),
                        StatementBody::StrictRule {
                            antecedents: a,
                            consequent: c,
                        },
                    )
                }),
            (
                proptest::collection::vec(arb_literal(), 0..3),
                arb_literal(),
                arb_weight()
            )
                .prop_map(move |(a, c, w)| {
                    (
                        format!("id{idx}"),
                        StatementBody::DefeasibleRule {
                            antecedents: a,
                            consequent: c,
                            weight: w,
                        },
                    )
                }),
        ]
    }

    proptest! {
        #[test]
        fn parse_print_round_trip(stmts in proptest::collection::vec(any::<u8>(), 1..6)
            .prop_flat_map(|v| v.into_iter().enumerate().map(|(i, _)| arb_statement(i)).collect::<Vec<_>>()))
        {
            // Premise literals must be distinct to form a valid document.
            let mut seen = BTreeSet::new();
            let statements: Vec<Statement> = stmts
                .into_iter()
                .filter(|(_, body)| match body {
                    StatementBody::Axiom { literal } | StatementBody::Premise { literal, .. } => {
                        seen.insert(literal.clone())
                    }
                    _ => true,
                })
                .map(|(id, body)| Statement { id, body, span: Span { line: 1, column: 1 } })
                .collect();
            prop_assume!(!statements.is_empty());
            let doc = TheoryDocument { statements };
            let text = print_theory(&doc);
            let reparsed = parse_theory(&text);
            prop_assert!(reparsed.is_ok(), "printed form failed to parse: {text}");
            prop_assert_eq!(doc, reparsed.unwrap());
        }

        #[test]
        fn parser_never_panics(text in "\\PC*") {
            let _ = parse_theory(&text);
        }
    }
}
