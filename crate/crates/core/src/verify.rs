//! Exhaustive and sampled coverage checks.
//!
//! Exhaustive mode walks every point of `{0,1}^n` (bounded by a cap) and
//! reports every trivial point skipped and every non-trivial point that no
//! member bisects. Sampled mode draws uniform non-trivial points from a
//! seeded generator. Both split their work into fixed chunks processed in
//! parallel and merged in chunk order, so reports are deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::coloring::{bisects_mask, Bicoloring};
use crate::edge::{full_mask, is_trivial_mask, word_count, Edge, Hypergraph};
use crate::error::{Error, Result};
use crate::family::Family;

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 30;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_UNCOVERED_CAP: usize = 64;

const EXHAUSTIVE_CHUNK: u64 = 1 << 16;
const SAMPLE_CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled { sample_count: u64, seed: u64 },
}

impl Mode {
    pub fn sampled(sample_count: u64, seed: u64) -> Self {
        Mode::Sampled { sample_count, seed }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub exhaustive_cap: usize,
    /// Maximum number of uncovered edges kept in a report.
    pub uncovered_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            uncovered_cap: DEFAULT_UNCOVERED_CAP,
        }
    }
}

fn edges_as_bits<S: Serializer>(edges: &[Edge], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(edges.iter().map(Edge::to_bit_string))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub n: usize,
    pub d: usize,
    #[serde(flatten)]
    pub mode: Mode,
    /// Non-trivial edges considered (samples drawn, in sampled mode).
    pub universe_size: u64,
    pub covered: u64,
    pub uncovered_total: u64,
    pub trivial_skipped: u64,
    pub complete: bool,
    /// Uncovered edges in ascending order, truncated to the cap.
    #[serde(serialize_with = "edges_as_bits")]
    pub uncovered: Vec<Edge>,
}

/// Fast membership tests against a whole family.
enum Checker<'a> {
    Small(Vec<(u64, u64)>),
    Large(&'a [Bicoloring]),
}

impl<'a> Checker<'a> {
    fn new(f: &'a Family) -> Self {
        if f.n() <= 64 {
            Checker::Small(
                f.colorings()
                    .iter()
                    .map(|x| x.masks().expect("n <= 64"))
                    .collect(),
            )
        } else {
            Checker::Large(f.colorings())
        }
    }

    fn covers_mask(&self, a: u64) -> bool {
        match self {
            Checker::Small(m) => m.iter().any(|&(p, q)| bisects_mask(p, q, a)),
            Checker::Large(_) => unreachable!("mask check on a wide family"),
        }
    }

    fn covers_words(&self, words: &[u64]) -> bool {
        match self {
            Checker::Small(m) => {
                let a = words.first().copied().unwrap_or(0);
                m.iter().any(|&(p, q)| bisects_mask(p, q, a))
            }
            Checker::Large(xs) => xs.iter().any(|x| {
                let (sum, touched) = x.probe(|w| words[w]);
                sum == 0 && touched
            }),
        }
    }
}

#[derive(Default)]
struct Tally {
    considered: u64,
    covered: u64,
    uncovered_total: u64,
    trivial: u64,
    uncovered: Vec<Edge>,
}

impl Tally {
    fn miss(&mut self, e: impl FnOnce() -> Edge, cap: usize) {
        self.uncovered_total += 1;
        if self.uncovered.len() < cap {
            self.uncovered.push(e());
        }
    }

    fn merge(parts: Vec<Tally>, cap: usize) -> Tally {
        let mut out = Tally::default();
        for p in parts {
            out.considered += p.considered;
            out.covered += p.covered;
            out.uncovered_total += p.uncovered_total;
            out.trivial += p.trivial;
            let room = cap.saturating_sub(out.uncovered.len());
            out.uncovered.extend(p.uncovered.into_iter().take(room));
        }
        out
    }

    fn into_report(self, f: &Family, mode: Mode) -> CoverageReport {
        CoverageReport {
            n: f.n(),
            d: f.d(),
            mode,
            universe_size: self.considered,
            covered: self.covered,
            uncovered_total: self.uncovered_total,
            trivial_skipped: self.trivial,
            complete: self.uncovered_total == 0,
            uncovered: self.uncovered,
        }
    }
}

pub fn verify_full(f: &Family, mode: Mode) -> Result<CoverageReport> {
    verify_full_with(f, mode, &VerifyOptions::default())
}

pub fn verify_full_with(f: &Family, mode: Mode, opts: &VerifyOptions) -> Result<CoverageReport> {
    match mode {
        Mode::Exhaustive => exhaustive(f, opts),
        Mode::Sampled { sample_count, seed } => Ok(sampled(f, sample_count, seed, opts)),
    }
}

fn exhaustive(f: &Family, opts: &VerifyOptions) -> Result<CoverageReport> {
    let (n, d) = (f.n(), f.d());
    let cap = opts.exhaustive_cap.min(63);
    if n > cap {
        return Err(Error::OverCap { n, cap });
    }
    let checker = Checker::new(f);
    let total = 1u64 << n;
    let chunks = total.div_ceil(EXHAUSTIVE_CHUNK);
    let parts: Vec<Tally> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut t = Tally::default();
            let end = ((c + 1) * EXHAUSTIVE_CHUNK).min(total);
            for a in c * EXHAUSTIVE_CHUNK..end {
                if is_trivial_mask(a, n, d) {
                    t.trivial += 1;
                    continue;
                }
                t.considered += 1;
                if checker.covers_mask(a) {
                    t.covered += 1;
                } else {
                    t.miss(
                        || Edge::from_mask(n, a).expect("mask below 2^n"),
                        opts.uncovered_cap,
                    );
                }
            }
            t
        })
        .collect();
    Ok(Tally::merge(parts, opts.uncovered_cap).into_report(f, Mode::Exhaustive))
}

/// Draws uniform random points, rejecting trivial ones.
fn sampled(f: &Family, samples: u64, seed: u64, opts: &VerifyOptions) -> CoverageReport {
    let (n, d) = (f.n(), f.d());
    let checker = Checker::new(f);
    let words = word_count(n);
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    let parts: Vec<Tally> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let mut buf = vec![0u64; words];
            let mut t = Tally::default();
            let end = ((c + 1) * SAMPLE_CHUNK).min(samples);
            for _ in c * SAMPLE_CHUNK..end {
                loop {
                    rng.fill(&mut buf[..]);
                    if n <= 64 {
                        let a = buf.first().copied().unwrap_or(0) & full_mask(n);
                        if is_trivial_mask(a, n, d) {
                            t.trivial += 1;
                            continue;
                        }
                        t.considered += 1;
                        if checker.covers_mask(a) {
                            t.covered += 1;
                        } else {
                            t.miss(
                                || Edge::from_mask(n, a).expect("masked"),
                                opts.uncovered_cap,
                            );
                        }
                        break;
                    }
                    let edge_words = &mut buf[..];
                    if let Some(last) = edge_words.last_mut() {
                        *last &= crate::edge::tail_mask(n);
                    }
                    // A bisected point is non-trivial, so triviality only
                    // needs checking on a miss.
                    if checker.covers_words(edge_words) {
                        t.considered += 1;
                        t.covered += 1;
                        break;
                    }
                    let e = Edge::from_words(n, edge_words.to_vec());
                    if e.is_trivial(d) {
                        t.trivial += 1;
                        continue;
                    }
                    t.considered += 1;
                    t.miss(|| e, opts.uncovered_cap);
                    break;
                }
            }
            t
        })
        .collect();
    let mut tally = Tally::merge(parts, opts.uncovered_cap);
    tally.uncovered.sort();
    tally.uncovered.dedup();
    tally.into_report(f, Mode::sampled(samples, seed))
}

/// Checks exactly the non-trivial edges of `g`; trivial ones are counted
/// in `trivial_skipped`.
pub fn verify_hypergraph(f: &Family, g: &Hypergraph) -> Result<CoverageReport> {
    verify_hypergraph_with(f, g, &VerifyOptions::default())
}

pub fn verify_hypergraph_with(
    f: &Family,
    g: &Hypergraph,
    opts: &VerifyOptions,
) -> Result<CoverageReport> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: g.n(),
        });
    }
    let checker = Checker::new(f);
    let d = f.d();
    let parts: Vec<Tally> = g
        .edges()
        .par_chunks(4096)
        .map(|chunk| {
            let mut t = Tally::default();
            for e in chunk {
                if e.is_trivial(d) {
                    t.trivial += 1;
                    continue;
                }
                t.considered += 1;
                if checker.covers_words(e.words()) {
                    t.covered += 1;
                } else {
                    t.miss(|| e.clone(), opts.uncovered_cap);
                }
            }
            t
        })
        .collect();
    Ok(Tally::merge(parts, opts.uncovered_cap).into_report(f, Mode::Exhaustive))
}

/// Number of 2-subsets `x` bisects: `|pos(x)| * |neg(x)|`.
pub fn bisected_pairs_count(x: &Bicoloring) -> u64 {
    x.pos_count() as u64 * x.neg_count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::cycle_family;
    use crate::family::Provenance;

    fn family(n: usize, d: usize, members: &[&str]) -> Family {
        Family::from_colorings(
            n,
            d,
            members.iter().map(|s| s.parse().unwrap()),
            Provenance::External,
        )
        .unwrap()
    }

    #[test]
    fn cycle_two_is_complete() {
        let r = verify_full(&cycle_family(2).unwrap(), Mode::Exhaustive).unwrap();
        assert!(r.complete);
        assert_eq!(r.universe_size, 4);
        assert_eq!(r.trivial_skipped, 4);
    }

    #[test]
    fn single_member_misses_pairs() {
        let r = verify_full(&family(3, 2, &["+-0"]), Mode::Exhaustive).unwrap();
        assert!(!r.complete);
        let bits: Vec<String> = r.uncovered.iter().map(Edge::to_bit_string).collect();
        assert!(bits.contains(&"101".to_string()));
        assert!(bits.contains(&"011".to_string()));
        assert_eq!(r.covered + r.uncovered_total, r.universe_size);
    }

    #[test]
    fn dropping_a_rotation_breaks_cycle_four() {
        let mut f = cycle_family(4).unwrap();
        f.retain_indices(|i, _| i != 4);
        let r = verify_full(&f, Mode::Exhaustive).unwrap();
        assert!(!r.complete);
        // The 4-set avoiding X_5's uncolored vertex (vertex 4) is missed.
        assert!(r.uncovered.contains(&Edge::parse("{1,2,3,5}", 5).unwrap()));
    }

    #[test]
    fn over_cap_is_rejected() {
        let f = family(4, 2, &["+-00"]);
        let opts = VerifyOptions {
            exhaustive_cap: 3,
            ..Default::default()
        };
        assert!(matches!(
            verify_full_with(&f, Mode::Exhaustive, &opts),
            Err(Error::OverCap { n: 4, cap: 3 })
        ));
    }

    #[test]
    fn hypergraph_examples() {
        let f = family(4, 2, &["+-00"]);
        let g = Hypergraph::new(4, vec![Edge::parse("{1,2}", 4).unwrap()]).unwrap();
        assert!(verify_hypergraph(&f, &g).unwrap().complete);

        let pairs: Vec<Edge> = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| Edge::from_vertices(4, [i, j]).unwrap()))
            .collect();
        let g = Hypergraph::new(4, pairs).unwrap();
        let f = family(4, 2, &["+-00", "+0-0"]);
        let r = verify_hypergraph(&f, &g).unwrap();
        assert!(!r.complete);
        assert_eq!(r.uncovered_total, 4);
        assert_eq!(r.universe_size, 6);

        let g = Hypergraph::new(4, vec![Edge::empty(4), Edge::parse("{3}", 4).unwrap()]).unwrap();
        let r = verify_hypergraph(&f, &g).unwrap();
        assert!(r.complete);
        assert_eq!(r.universe_size, 0);
        assert_eq!(r.trivial_skipped, 2);

        let other = Hypergraph::new(5, vec![]).unwrap();
        assert!(verify_hypergraph(&f, &other).is_err());
    }

    #[test]
    fn pair_counts() {
        assert_eq!(bisected_pairs_count(&"++--0".parse().unwrap()), 4);
        assert_eq!(bisected_pairs_count(&"+---0".parse().unwrap()), 3);
        assert_eq!(bisected_pairs_count(&"+-000".parse().unwrap()), 1);
    }

    #[test]
    fn sampled_is_reproducible_and_agrees_with_exhaustive() {
        let mut f = cycle_family(6).unwrap();
        f.retain_indices(|i, _| i % 3 != 0);
        let ex = verify_full(&f, Mode::Exhaustive).unwrap();
        let s1 = verify_full(&f, Mode::sampled(20_000, 7)).unwrap();
        let s2 = verify_full(&f, Mode::sampled(20_000, 7)).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.universe_size, 20_000);
        let opts = VerifyOptions {
            uncovered_cap: usize::MAX,
            ..Default::default()
        };
        let all = verify_full_with(&f, Mode::Exhaustive, &opts).unwrap();
        for e in &s1.uncovered {
            assert!(all.uncovered.contains(e));
        }
        assert!(!ex.complete && !s1.complete);
    }

    #[test]
    fn order_independent() {
        let f = cycle_family(5).unwrap();
        let mut rev = Family::new(f.n(), f.d()).unwrap();
        for (x, l) in f.iter().collect::<Vec<_>>().into_iter().rev() {
            rev.push(x.clone(), l).unwrap();
        }
        rev.retain_indices(|i, _| i != 2);
        let mut fwd = f.clone();
        fwd.retain_indices(|i, _| i != 3);
        assert_eq!(
            verify_full(&fwd, Mode::Exhaustive).unwrap(),
            verify_full(&rev, Mode::Exhaustive).unwrap()
        );
    }

    #[test]
    fn wide_family_sampling() {
        let n = 200;
        let x = Bicoloring::from_parts(n, [0, 70], [1, 150]).unwrap();
        let f = Family::from_colorings(n, 4, [x], Provenance::External).unwrap();
        let r = verify_full(&f, Mode::sampled(2_000, 1)).unwrap();
        assert_eq!(r.universe_size, 2_000);
        assert!(r.covered > 0 && r.uncovered_total > 0);
        assert_eq!(r.covered + r.uncovered_total, 2_000);
    }
}
