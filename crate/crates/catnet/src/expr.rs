//! Process expressions, markings, catalyst lists and permutations as
//! written on the command line.
//!
//! ```text
//! expr ::= par (";" par)*          composition, first process on the left
//! par  ::= atom ("+" atom)*        tensor
//! atom ::= "id(" marking ")" | IDENT | "(" expr ")"
//! ```

use catnet_core::canon::CanonicalProcess;
use catnet_core::error::{Branch, Error};
use catnet_core::network::{CatalystList, Permutation};
use catnet_core::{infer_type, CatalystNet, Marking, MorphismType, PetriNet, ProcessTerm, TransitionId};

use crate::dsl::{marking_text, raw_marking, resolve_marking};
use crate::syntax::{Cursor, Diagnostic, Location, Tok};

/// A term with the location of each node's defining token.
enum Node {
    Gen(TransitionId),
    Id(Marking),
    Tensor(Box<Spanned>, Box<Spanned>),
    Compose(Box<Spanned>, Box<Spanned>),
}

struct Spanned {
    node: Node,
    at: Location,
}

impl Spanned {
    fn term(&self) -> ProcessTerm {
        match &self.node {
            Node::Gen(t) => ProcessTerm::Gen(*t),
            Node::Id(m) => ProcessTerm::Id(m.clone()),
            Node::Tensor(l, r) => ProcessTerm::tensor_of(l.term(), r.term()),
            Node::Compose(l, r) => ProcessTerm::compose_of(l.term(), r.term()),
        }
    }

    fn at_path(&self, path: &[Branch]) -> &Spanned {
        match (path.split_first(), &self.node) {
            (Some((Branch::Left, rest)), Node::Tensor(l, _) | Node::Compose(l, _)) => l.at_path(rest),
            (Some((Branch::Right, rest)), Node::Tensor(_, r) | Node::Compose(_, r)) => r.at_path(rest),
            _ => self,
        }
    }
}

struct Parser<'a> {
    cur: Cursor,
    net: &'a PetriNet,
}

impl Parser<'_> {
    fn seq(&mut self) -> Result<Spanned, Diagnostic> {
        let mut left = self.par()?;
        while let Some(at) = self.cur.eat(&Tok::Semi) {
            let right = self.par()?;
            left = Spanned {
                node: Node::Compose(Box::new(left), Box::new(right)),
                at,
            };
        }
        Ok(left)
    }

    fn par(&mut self) -> Result<Spanned, Diagnostic> {
        let mut left = self.atom()?;
        while let Some(at) = self.cur.eat(&Tok::Plus) {
            let right = self.atom()?;
            left = Spanned {
                node: Node::Tensor(Box::new(left), Box::new(right)),
                at,
            };
        }
        Ok(left)
    }

    fn atom(&mut self) -> Result<Spanned, Diagnostic> {
        if self.cur.eat(&Tok::LParen).is_some() {
            let inner = self.seq()?;
            self.cur.expect(&Tok::RParen)?;
            return Ok(inner);
        }
        if self.cur.is_keyword("id") && self.cur.peek_nth(1).tok == Tok::LParen {
            let at = self.cur.advance().at;
            self.cur.advance();
            let m = marking(&mut self.cur, self.net)?;
            self.cur.expect(&Tok::RParen)?;
            return Ok(Spanned { node: Node::Id(m), at });
        }
        let (name, at) = self
            .cur
            .ident()
            .map_err(|_| self.cur.unexpected("a transition, `id(...)` or `(`"))?;
        let t = self
            .net
            .transition_id(&name)
            .ok_or_else(|| Diagnostic::new(at, format!("unknown transition `{name}`")))?;
        Ok(Spanned { node: Node::Gen(t), at })
    }
}

fn marking(cur: &mut Cursor, net: &PetriNet) -> Result<Marking, Diagnostic> {
    let raw = raw_marking(cur)?;
    resolve_marking(&raw, |n| net.species_id(n))
}

fn parse_spanned(text: &str, net: &PetriNet) -> Result<Spanned, Diagnostic> {
    let mut p = Parser {
        cur: Cursor::new(text)?,
        net,
    };
    let s = p.seq()?;
    p.cur.finish()?;
    Ok(s)
}

/// Parses an expression without checking that it is well typed.
pub fn parse_term(text: &str, net: &PetriNet) -> Result<ProcessTerm, Diagnostic> {
    Ok(parse_spanned(text, net)?.term())
}

/// Parses and type checks an expression; a composition mismatch is
/// reported at its `;`.
pub fn parse_typed_term(text: &str, net: &PetriNet) -> Result<(ProcessTerm, MorphismType), Diagnostic> {
    let s = parse_spanned(text, net)?;
    let term = s.term();
    match infer_type(net, &term) {
        Ok(ty) => Ok((term, ty)),
        Err(Error::CompositionMismatch { path, cod, dom }) => Err(Diagnostic::new(
            s.at_path(&path.0).at,
            format!(
                "cannot compose: the left side ends at {} but the right side starts at {}",
                marking_text(net, &cod),
                marking_text(net, &dom)
            ),
        )),
        Err(e) => Err(Diagnostic::new(s.at, e.to_string())),
    }
}

pub fn parse_marking(text: &str, net: &PetriNet) -> Result<Marking, Diagnostic> {
    let mut cur = Cursor::new(text)?;
    let m = marking(&mut cur, net)?;
    cur.finish()?;
    Ok(m)
}

/// `[b, b]`; the brackets may be left out and `[]` is the empty list.
pub fn parse_catalyst_list(text: &str, cnet: &CatalystNet) -> Result<CatalystList, Diagnostic> {
    let mut cur = Cursor::new(text)?;
    let bracketed = cur.eat(&Tok::LBracket).is_some();
    let mut ids = Vec::new();
    let closing = if bracketed { Tok::RBracket } else { Tok::Eof };
    if cur.peek().tok != closing {
        loop {
            let (name, at) = cur.ident()?;
            let id = cnet
                .net()
                .species_id(&name)
                .filter(|s| cnet.is_catalyst(*s))
                .ok_or_else(|| Diagnostic::new(at, format!("`{name}` is not a catalyst")))?;
            ids.push(id);
            if cur.eat(&Tok::Comma).is_none() {
                break;
            }
        }
    }
    if bracketed {
        cur.expect(&Tok::RBracket)?;
    }
    cur.finish()?;
    Ok(CatalystList::new(ids, cnet).expect("entries were checked"))
}

/// One-line notation counted from 1, e.g. `[2, 1]`.
pub fn parse_permutation(text: &str) -> Result<Permutation, Diagnostic> {
    let mut cur = Cursor::new(text)?;
    let start = cur.peek().at;
    let bracketed = cur.eat(&Tok::LBracket).is_some();
    let closing = if bracketed { Tok::RBracket } else { Tok::Eof };
    let mut images = Vec::new();
    if cur.peek().tok != closing {
        loop {
            match cur.peek().tok {
                Tok::Int(n) => {
                    cur.advance();
                    images.push(n as usize);
                }
                _ => return Err(cur.unexpected("a position")),
            }
            if cur.eat(&Tok::Comma).is_none() {
                break;
            }
        }
    }
    if bracketed {
        cur.expect(&Tok::RBracket)?;
    }
    cur.finish()?;
    Permutation::from_one_based(&images).map_err(|_| Diagnostic::new(start, "not a permutation of 1..n"))
}

/// The expression syntax for `term`, using names from `net`.
pub fn term_text(net: &PetriNet, term: &ProcessTerm) -> String {
    fn go(net: &PetriNet, t: &ProcessTerm, out: &mut String, in_par: bool) {
        match t {
            ProcessTerm::Gen(id) => out.push_str(net.transition(*id).map(|t| t.name.as_str()).unwrap_or("?")),
            ProcessTerm::Id(m) => {
                out.push_str("id(");
                out.push_str(&marking_text(net, m));
                out.push(')');
            }
            ProcessTerm::Tensor(l, r) => {
                go(net, l, out, true);
                out.push_str(" + ");
                let paren = matches!(**r, ProcessTerm::Tensor(..));
                wrap(net, r, out, paren, true);
            }
            ProcessTerm::Compose(l, r) => {
                if in_par {
                    out.push('(');
                }
                go(net, l, out, false);
                out.push_str(" ; ");
                let paren = matches!(**r, ProcessTerm::Compose(..));
                wrap(net, r, out, paren, false);
                if in_par {
                    out.push(')');
                }
            }
        }
    }
    fn wrap(net: &PetriNet, t: &ProcessTerm, out: &mut String, paren: bool, in_par: bool) {
        if paren {
            out.push('(');
            go(net, t, out, false);
            out.push(')');
        } else {
            go(net, t, out, in_par);
        }
    }
    let mut out = String::new();
    go(net, term, &mut out, false);
    out
}

/// Names of the transitions in each layer, repeated by multiplicity.
pub fn layer_names(net: &PetriNet, p: &CanonicalProcess) -> Vec<Vec<String>> {
    p.layers()
        .iter()
        .map(|layer| {
            layer
                .iter()
                .flat_map(|(t, n)| {
                    let name = net.transition(*t).map(|t| t.name.clone()).unwrap_or_default();
                    std::iter::repeat_n(name, *n as usize)
                })
                .collect()
        })
        .collect()
}

/// `dom | {tau1, tau2} {tau2}`.
pub fn process_text(net: &PetriNet, p: &CanonicalProcess) -> String {
    let mut out = marking_text(net, p.dom());
    out.push_str(" |");
    for layer in layer_names(net, p) {
        out.push_str(" {");
        out.push_str(&layer.join(", "));
        out.push('}');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use catnet_core::fixtures::{boat_jeep, boat_jeep_catalytic, mk};

    #[test]
    fn tensor_of_boats() {
        let net = boat_jeep();
        let (t, ty) = parse_typed_term("tau2 + tau2", &net).unwrap();
        let tau2 = ProcessTerm::Gen(TransitionId(1));
        assert_eq!(t, ProcessTerm::tensor_of(tau2.clone(), tau2));
        assert_eq!(ty.dom, mk(&net, &[("b", 2), ("d", 2)]));
        assert_eq!(ty.cod, mk(&net, &[("b", 2), ("e", 2)]));
    }

    #[test]
    fn identity_on_nothing() {
        assert_eq!(parse_term("id(0)", &boat_jeep()).unwrap(), ProcessTerm::Id(Marking::zero()));
    }

    #[test]
    fn mismatch_points_at_the_semicolon() {
        let e = parse_typed_term("tau1 ; tau2", &boat_jeep()).unwrap_err();
        assert_eq!(e.location, Location { line: 1, column: 6 });
        assert!(e.message.contains("a + 2 d"), "{}", e.message);
        assert!(e.message.contains("b + d"), "{}", e.message);

        let e = parse_typed_term("(tau2 + id(b + d)) ; (id(b + e) + tau2) ; tau1", &boat_jeep()).unwrap_err();
        assert_eq!(e.location.column, 41);
    }

    #[test]
    fn syntax_errors() {
        let net = boat_jeep();
        assert_eq!(parse_term("tau3", &net).unwrap_err().message, "unknown transition `tau3`");
        assert_eq!(parse_term("tau1 +", &net).unwrap_err().location.column, 7);
        assert!(parse_term("(tau1", &net).is_err());
        assert!(parse_term("id(q)", &net).is_err());
    }

    #[test]
    fn printing_round_trips() {
        let net = boat_jeep();
        for text in [
            "tau2 + tau2",
            "tau2 + id(b + d) ; id(b + e) + tau2",
            "(tau1 ; id(a + 2 d)) + tau2",
            "tau1 ; (id(a + 2 d) ; id(a + 2 d))",
            "tau2 + (tau2 + id(0))",
            "id(0)",
        ] {
            let t = parse_term(text, &net).unwrap();
            assert_eq!(term_text(&net, &t), text);
            assert_eq!(parse_term(&term_text(&net, &t), &net).unwrap(), t);
        }
    }

    #[test]
    fn lists_and_permutations() {
        let cnet = boat_jeep_catalytic();
        assert_eq!(parse_catalyst_list("[b, b]", &cnet).unwrap().len(), 2);
        assert_eq!(parse_catalyst_list("a,b", &cnet).unwrap().len(), 2);
        assert!(parse_catalyst_list("[]", &cnet).unwrap().is_empty());
        assert!(parse_catalyst_list("[c]", &cnet).is_err());
        assert_eq!(parse_permutation("[2,1]").unwrap().images(), &[1, 0]);
        assert!(parse_permutation("[]").unwrap().is_empty());
        assert!(parse_permutation("[1,1]").is_err());
    }
}
