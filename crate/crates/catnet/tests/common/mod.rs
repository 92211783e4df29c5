use rand::seq::SliceRandom;
use rand::Rng;

const NAMES: [&str; 8] = ["a", "b", "cat", "x_1", "y2", "tok", "Z", "_s"];

fn gap<R: Rng>(rng: &mut R) -> &'static str {
    [" ", "  ", "\n", "\n  ", "\t", " # note\n", "\n# a whole line\n"].choose(rng).unwrap()
}

fn marking<R: Rng>(rng: &mut R, species: &[String], pinned: &[(String, u64)]) -> String {
    let mut terms: Vec<String> = pinned.iter().map(|(s, n)| format!("{n} {s}")).collect();
    let extra = if species.is_empty() { 0 } else { rng.gen_range(0..3) };
    for _ in 0..extra {
        let s = species.choose(rng).unwrap();
        terms.push(match rng.gen_range(0..3) {
            0 => s.clone(),
            1 => format!("1 {s}"),
            _ => format!("{} {s}", rng.gen_range(2..5)),
        });
    }
    terms.shuffle(rng);
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(&format!("{}+{}", gap(rng), gap(rng)))
    }
}

/// A random well-formed net document with irregular layout and comments.
pub fn random_document<R: Rng>(rng: &mut R) -> String {
    let n_species = rng.gen_range(0..=6);
    let mut species: Vec<String> = NAMES.iter().map(|s| s.to_string()).collect();
    species.shuffle(rng);
    species.truncate(n_species);
    let catalysts: Vec<bool> = species.iter().map(|_| rng.gen_bool(0.3)).collect();
    let mut text = format!("# generated\n{}net{}doc{}{{", gap(rng), gap(rng), gap(rng));
    if !species.is_empty() {
        let items: Vec<String> = species
            .iter()
            .zip(&catalysts)
            .map(|(s, c)| if *c { format!("{s} [catalyst]") } else { s.clone() })
            .collect();
        text += &format!("{}species {};", gap(rng), items.join(&format!(",{}", gap(rng))));
        let free: Vec<String> = species
            .iter()
            .zip(&catalysts)
            .filter(|(_, c)| !**c)
            .map(|(s, _)| s.clone())
            .collect();
        for k in 0..rng.gen_range(0..=5) {
            let mut pinned = Vec::new();
            for (s, _) in species.iter().zip(&catalysts).filter(|(_, c)| **c) {
                if rng.gen_bool(0.5) {
                    pinned.push((s.clone(), rng.gen_range(1..3u64)));
                }
            }
            let (src, tgt) = (marking(rng, &free, &pinned), marking(rng, &free, &pinned));
            text += &format!("{}transition t{k}{}:{}{src}{}->{}{tgt};", gap(rng), gap(rng), gap(rng), gap(rng), gap(rng));
        }
    }
    text += &format!("{}}}{}", gap(rng), gap(rng));
    text
}
