//! The net description language.
//!
//! ```text
//! # boats and jeeps
//! net boatjeep {
//!   species a [catalyst], b [catalyst], c, d, e;
//!   transition tau1: a + 2 c -> a + 2 d;
//!   transition tau2: b + d -> b + e;
//! }
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use catnet_core::net::Transition;
use catnet_core::{CatalystNet, Marking, PetriNet, SpeciesId};

use crate::syntax::{Cursor, Diagnostic, Location, Tok};

/// A parsed net together with its declared catalysts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetDocument {
    pub name: String,
    pub cnet: CatalystNet,
}

impl NetDocument {
    pub fn net(&self) -> &PetriNet {
        self.cnet.net()
    }
}

/// A marking as written: `(count, species name, location)` summands.
pub(crate) type RawMarking = Vec<(u64, String, Location)>;

/// `"0" | [INT] IDENT ("+" [INT] IDENT)*`.
pub(crate) fn raw_marking(cur: &mut Cursor) -> Result<RawMarking, Diagnostic> {
    if cur.peek().tok == Tok::Int(0) && !matches!(cur.peek_nth(1).tok, Tok::Ident(_)) {
        cur.advance();
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    loop {
        let count = match cur.peek().tok {
            Tok::Int(n) => {
                cur.advance();
                n
            }
            _ => 1,
        };
        let (name, at) = cur.ident()?;
        out.push((count, name, at));
        if cur.eat(&Tok::Plus).is_none() {
            return Ok(out);
        }
    }
}

/// Resolves species names through `lookup`.
pub(crate) fn resolve_marking(
    raw: &RawMarking,
    lookup: impl Fn(&str) -> Option<SpeciesId>,
) -> Result<Marking, Diagnostic> {
    let mut m = Marking::zero();
    for (count, name, at) in raw {
        let id = lookup(name).ok_or_else(|| Diagnostic::new(*at, format!("unknown species `{name}`")))?;
        m.add_to(id, *count)
            .map_err(|_| Diagnostic::new(*at, format!("count of `{name}` overflows")))?;
    }
    Ok(m)
}

struct RawTransition {
    name: String,
    at: Location,
    src: RawMarking,
    tgt: RawMarking,
}

struct RawNet {
    name: String,
    species: Vec<(String, Location, bool)>,
    transitions: Vec<RawTransition>,
}

fn parse_raw(text: &str) -> Result<RawNet, Diagnostic> {
    let mut cur = Cursor::new(text)?;
    cur.keyword("net")?;
    let (name, _) = cur.ident()?;
    cur.expect(&Tok::LBrace)?;
    let mut species = Vec::new();
    if cur.is_keyword("species") {
        cur.advance();
        loop {
            let (s, at) = cur.ident()?;
            let catalyst = if cur.eat(&Tok::LBracket).is_some() {
                cur.keyword("catalyst")?;
                cur.expect(&Tok::RBracket)?;
                true
            } else {
                false
            };
            species.push((s, at, catalyst));
            if cur.eat(&Tok::Comma).is_none() {
                break;
            }
        }
        cur.expect(&Tok::Semi)?;
    }
    let mut transitions = Vec::new();
    while cur.is_keyword("transition") {
        cur.advance();
        let (name, at) = cur.ident()?;
        cur.expect(&Tok::Colon)?;
        let src = raw_marking(&mut cur)?;
        cur.expect(&Tok::Arrow)?;
        let tgt = raw_marking(&mut cur)?;
        cur.expect(&Tok::Semi)?;
        transitions.push(RawTransition { name, at, src, tgt });
    }
    if cur.peek().tok != Tok::RBrace {
        let wanted = if species.is_empty() && transitions.is_empty() {
            "`species`, `transition` or `}`"
        } else {
            "`transition` or `}`"
        };
        return Err(cur.unexpected(wanted));
    }
    cur.advance();
    cur.finish()?;
    Ok(RawNet {
        name,
        species,
        transitions,
    })
}

/// Parses a net document. Every diagnostic carries a location; a document
/// with diagnostics yields no net.
pub fn parse_net(text: &str) -> Result<NetDocument, Vec<Diagnostic>> {
    let raw = parse_raw(text).map_err(|d| vec![d])?;
    let mut diags = Vec::new();
    let mut ids: BTreeMap<&str, SpeciesId> = BTreeMap::new();
    for (k, (s, at, _)) in raw.species.iter().enumerate() {
        if ids.insert(s, SpeciesId(k as u32)).is_some() {
            diags.push(Diagnostic::new(*at, format!("species `{s}` is declared twice")));
        }
    }
    let mut seen = BTreeSet::new();
    let mut transitions = Vec::new();
    for t in &raw.transitions {
        if !seen.insert(t.name.as_str()) {
            diags.push(Diagnostic::new(t.at, format!("transition `{}` is declared twice", t.name)));
        }
        if ids.contains_key(t.name.as_str()) {
            diags.push(Diagnostic::new(
                t.at,
                format!("transition `{}` has the same name as a species", t.name),
            ));
        }
        let lookup = |n: &str| ids.get(n).copied();
        match (resolve_marking(&t.src, lookup), resolve_marking(&t.tgt, lookup)) {
            (Ok(src), Ok(tgt)) => transitions.push(Transition {
                name: t.name.clone(),
                src,
                tgt,
            }),
            (src, tgt) => diags.extend(src.err().into_iter().chain(tgt.err())),
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    let net = PetriNet::new(raw.species.iter().map(|(s, _, _)| s.clone()), transitions);
    let declared: BTreeSet<SpeciesId> = raw
        .species
        .iter()
        .enumerate()
        .filter(|(_, (_, _, c))| *c)
        .map(|(k, _)| SpeciesId(k as u32))
        .collect();
    for &c in &declared {
        for (t, raw_t) in net.transitions.iter().zip(&raw.transitions) {
            let (used, made) = (t.src.get(c), t.tgt.get(c));
            if used != made {
                let name = &raw.species[c.index()].0;
                diags.push(Diagnostic::new(
                    raw_t.at,
                    format!(
                        "declared catalyst `{name}` is changed by transition `{}` ({used} consumed, {made} produced)",
                        t.name
                    ),
                ));
            }
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    let cnet = CatalystNet::new(net, declared).expect("catalysts were checked");
    Ok(NetDocument { name: raw.name, cnet })
}

/// `a + 2 c`, or `0` for the empty marking.
pub fn marking_text(net: &PetriNet, m: &Marking) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (s, n)) in m.iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        let name = net.species_name(s).unwrap_or("?");
        if n == 1 {
            out.push_str(name);
        } else {
            let _ = write!(out, "{n} {name}");
        }
    }
    out
}

/// Renders a document in the concrete syntax; parsing the output gives the
/// same document back.
pub fn print_net(doc: &NetDocument) -> String {
    let net = doc.net();
    let mut out = format!("net {} {{\n", doc.name);
    if net.species_count() > 0 {
        let items: Vec<String> = net
            .species
            .iter()
            .map(|s| {
                if doc.cnet.is_catalyst(s.id) {
                    format!("{} [catalyst]", s.name)
                } else {
                    s.name.clone()
                }
            })
            .collect();
        let _ = writeln!(out, "  species {};", items.join(", "));
    }
    for t in &net.transitions {
        let _ = writeln!(
            out,
            "  transition {}: {} -> {};",
            t.name,
            marking_text(net, &t.src),
            marking_text(net, &t.tgt)
        );
    }
    out.push_str("}\n");
    out
}
