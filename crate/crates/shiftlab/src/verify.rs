//! Pinned checks reproducing the worked examples, one suite per id.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use shiftlab_core::approx::{glue, LanguageOracle};
use shiftlab_core::bfree::{de_table, GeneratorStream};
use shiftlab_core::measures::{markov_entropy, parry_measure};
use shiftlab_core::sgap::{frobenius_l, inner_approx_point, sgap_graph, SGapSet};
use shiftlab_core::sofic::{
    classify_graph, irreducible_presentation, specification_constant, topological_entropy,
    LabeledGraph,
};
use shiftlab_core::word::mismatch_density;
use shiftlab_core::{Error, ExactRational, Word};

use crate::catalog;
use crate::certificate;
use crate::error::CliError;

pub const SUITES: [&str; 6] = [
    "ex-4-nondbar",
    "ex-6-bfree-nondbar",
    "lemma-glue",
    "sgap-surgery",
    "de-convergence",
    "parry-entropy",
];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub claim: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub id: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn run(id: &str, seed: u64) -> Result<Report, CliError> {
    let checks = match id {
        "ex-4-nondbar" => ex4()?,
        "ex-6-bfree-nondbar" => ex6(150)?,
        "lemma-glue" => lemma_glue(seed)?,
        "sgap-surgery" => sgap_surgery(seed, 500)?,
        "de-convergence" => de_convergence(1_000_000, 20)?,
        "parry-entropy" => parry_entropy()?,
        other => {
            return Err(CliError::Validation(format!(
                "unknown example id {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(Report {
        id: id.into(),
        seed,
        checks,
    })
}

fn check(claim: impl Into<String>, pass: bool, detail: Value) -> Check {
    Check {
        claim: claim.into(),
        pass,
        detail,
    }
}

/// `y^(k)` lies in the order-`2k` Markov approximation of the parity shift,
/// has `2j(k+1)` ones in its first `2j(4k+3)` symbols and stays at distance
/// at least `1/8` from the parity shift.
pub fn ex4() -> Result<Vec<Check>, CliError> {
    let g = catalog::parity_shift();
    let mut oracle = LanguageOracle::from_graph(&g)?;
    let eighth = ExactRational::new(1, 8);
    let mut out = Vec::new();
    for k in 1..=3usize {
        let y = catalog::nondbar_point(k);
        let counts: Vec<usize> = (1..=5)
            .map(|j| y.prefix(2 * j * (4 * k + 3)).count(1))
            .collect();
        let want: Vec<usize> = (1..=5).map(|j| 2 * j * (k + 1)).collect();
        out.push(check(
            format!("k={k}: ones in y[0, 2j(4k+3)) equal 2j(k+1) for j=1..5"),
            counts == want,
            json!(counts),
        ));

        let per = y.period().len();
        let windows_ok =
            (0..per).all(|s| oracle.contains(&y.subword(s, s + 2 * k + 1).expect("valid range")));
        out.push(check(
            format!(
                "k={k}: y lies in the Markov approximation of order {}",
                2 * k
            ),
            windows_ok,
            Value::Null,
        ));

        let cert = certificate::point_sofic(&y, &g, 16)?;
        let value = match &cert.value {
            certificate::CertValue::Exact(s) => s.parse::<ExactRational>()?,
            certificate::CertValue::Float(_) => unreachable!("distances are exact"),
        };
        out.push(check(
            format!("k={k}: dist(y, X) >= 1/8"),
            value >= eighth && cert.consistent(),
            serde_json::to_value(&cert).expect("serializes"),
        ));
    }
    Ok(out)
}

/// The periodic witness built from `u = eta_B[0, 2n)` with
/// `B = {2} ∪ {p^2 : p >= 13}` stays `1/16` away from the parity shift.
pub fn ex6(n: usize) -> Result<Vec<Check>, CliError> {
    let tail = catalog::sparse_tail_bound(10_000);
    let w = catalog::sparse_witness(n)?;
    let ones = w.u.count(1);
    let cert = certificate::point_sofic(&w.y, &catalog::parity_shift(), 16)?;
    let value = match &cert.value {
        certificate::CertValue::Exact(s) => s.parse::<ExactRational>()?,
        certificate::CertValue::Float(_) => unreachable!("distances are exact"),
    };
    Ok(vec![
        check(
            "sum of 1/b over b in B, b > 2, is below 1/32",
            tail < 1.0 / 32.0,
            json!(tail),
        ),
        check(
            format!("n={n}: d_Ham((01)^n, u) < 1/4"),
            w.to_alternating < ExactRational::new(1, 4),
            json!(w.to_alternating.to_string()),
        ),
        check(
            format!("n={n}: u has at least n/2 ones"),
            2 * ones >= n,
            json!(ones),
        ),
        check(
            format!("n={n}: dist(y, parity shift) >= 1/16"),
            value >= ExactRational::new(1, 16) && cert.consistent(),
            json!({ "value": value.to_string(), "period": w.y.period().len() }),
        ),
    ])
}

pub(crate) fn random_word(g: &LabeledGraph, len: usize, rng: &mut ChaCha8Rng) -> Word {
    let outs = g.out_edges();
    let mut v = rng.gen_range(0..g.vertex_count());
    let mut w = Vec::with_capacity(len);
    for _ in 0..len {
        let e = g.edges()[*outs[v].choose(rng).expect("trimmed graph")];
        w.push(e.label);
        v = e.dst;
    }
    Word(w)
}

/// Gluing words of the golden-mean shift stays within `k/N` of their
/// concatenation.
pub fn lemma_glue(seed: u64) -> Result<Vec<Check>, CliError> {
    let g = catalog::golden_mean();
    let k = specification_constant(&g, 16)?.ok_or(Error::NoBridge { k: 16 })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![check(
        "golden mean has specification constant 1",
        k == 1,
        json!(k),
    )];
    for n in [5usize, 10, 20] {
        let bound = ExactRational::from_counts(k as u64, n as u64);
        let mut worst = ExactRational::zero();
        let mut ok = true;
        for _ in 0..100 {
            let count = rng.gen_range(1..=6);
            let mut words: Vec<Word> = (0..count)
                .map(|_| {
                    let len = rng.gen_range(n..=2 * n);
                    random_word(&g, len, &mut rng)
                })
                .collect();
            let shortest = rng.gen_range(0..count);
            words[shortest] = random_word(&g, n, &mut rng);
            let split = rng.gen_range(0..count);
            let r = glue(&g, k, &words[..split], &words[split..])?;
            let d = mismatch_density(&r.point, &r.concatenation);
            ok &= g.accepts_point(&r.point) && d <= bound && r.bound == bound;
            worst = worst.max(d);
        }
        out.push(check(
            format!("N={n}: 100 glued points lie in X and within k/N of the concatenation"),
            ok,
            json!({ "worst": worst.to_string(), "bound": bound.to_string() }),
        ));
    }
    Ok(out)
}

/// Frobenius length by direct search: the largest non-representable value
/// below `limit`, plus one.
pub fn frobenius_oracle(parts: &[u64], limit: u64) -> u64 {
    let representable = |v: u64| -> bool {
        let mut reach = vec![false; v as usize + 1];
        reach[0] = true;
        for x in 1..=v as usize {
            reach[x] = parts
                .iter()
                .any(|&p| p as usize <= x && reach[x - p as usize]);
        }
        reach[v as usize]
    };
    (1..limit)
        .filter(|&v| !representable(v))
        .max()
        .map_or(1, |v| v + 1)
}

/// Random S-gap surgery instances land in the truncated shift with every
/// gap within its bound.
pub fn sgap_surgery(seed: u64, instances: usize) -> Result<Vec<Check>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let frob = [(vec![2u64, 3], 2u64), (vec![3, 5], 8)];
    let mut out = Vec::new();
    for (parts, want) in &frob {
        let got = frobenius_l(parts)?;
        let oracle = frobenius_oracle(parts, 200);
        out.push(check(
            format!("frobenius_L({parts:?}) = {want}"),
            got == *want && oracle == *want,
            json!({ "dp": got, "oracle": oracle }),
        ));
    }
    let mut done = 0;
    let mut ok = true;
    let mut worst = ExactRational::zero();
    while done < instances {
        let size = rng.gen_range(3..=6);
        let mut gaps: Vec<u64> = (1..=12).collect();
        gaps.shuffle(&mut rng);
        gaps.truncate(size - 1);
        gaps.push(rng.gen_range(20..=80));
        let s = SGapSet::new(gaps)?;
        let k = rng.gen_range(2..s.gaps().len());
        let sk = s.truncate(k);
        let ts: Vec<u64> = (0..rng.gen_range(1..=6))
            .map(|_| *s.gaps().choose(&mut rng).expect("nonempty"))
            .collect();
        let r = match inner_approx_point(&ts, &s, k) {
            Ok(r) => r,
            Err(Error::NotMixing | Error::GapTooShort { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        done += 1;
        let l = frobenius_l(&sk.gaps().iter().map(|x| x + 1).collect::<Vec<_>>())?;
        let s_max = *sk.gaps().last().expect("nonempty");
        let accepted = sgap_graph(&sk)?.accepts_point(&r.point);
        let within = r.gaps.iter().all(|g| {
            if !g.replaced {
                return g.realized.is_zero();
            }
            let t = g.gap;
            let bound = (ExactRational::from_counts(t, s_max + 1)
                + ExactRational::from_integer((l + s_max) as i64))
                / ExactRational::from_integer(t as i64);
            g.realized <= bound
        });
        ok &= accepted && within;
        worst = worst.max(r.sup_realized.clone());
    }
    out.push(check(
        format!("{instances} surgeries lie in the S[k] shift and respect the per-gap bound"),
        ok,
        json!({ "worst_realized": worst.to_string() }),
    ));
    Ok(out)
}

/// Davenport–Erdős: deficiencies of truncations of the prime squares decrease
/// and stay under the tail sums.
pub fn de_convergence(n: u64, kmax: usize) -> Result<Vec<Check>, CliError> {
    let ks: Vec<usize> = (1..=kmax).collect();
    let rows = de_table(&GeneratorStream::SquaresOfPrimes, &ks, n)?;
    let monotone = rows.windows(2).all(|w| w[1].deficiency <= w[0].deficiency);
    let bounded = rows
        .iter()
        .all(|r| r.deficiency <= r.tail_bound.clone() + r.boundary.clone());
    let table: Vec<Value> = rows
        .iter()
        .map(|r| json!([r.k, r.deficiency.to_f64(), r.tail_bound.to_f64()]))
        .collect();
    Ok(vec![
        check(
            format!("N={n}: deficiency is nonincreasing in k for k=1..{kmax}"),
            monotone,
            json!(table),
        ),
        check(
            "each deficiency is within the tail bound plus boundary term",
            bounded,
            Value::Null,
        ),
    ])
}

pub fn corpus_mixing_graphs() -> Vec<(&'static str, LabeledGraph)> {
    vec![
        ("full-2", catalog::full_shift()),
        ("golden-mean", catalog::golden_mean()),
        ("even", catalog::even_shift()),
        (
            "sgap-1-2",
            sgap_graph(&SGapSet::new(vec![1, 2]).expect("valid")).expect("nonempty"),
        ),
        (
            "sgap-2-3-7",
            sgap_graph(&SGapSet::new(vec![2, 3, 7]).expect("valid")).expect("nonempty"),
        ),
    ]
}

/// The Parry measure attains the topological entropy.
pub fn parry_entropy() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    let ln2 = std::f64::consts::LN_2;
    let ln_phi = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    let h2 = topological_entropy(&catalog::full_shift())?;
    out.push(check(
        "h(full 2-shift) = ln 2 within 1e-9",
        (h2 - ln2).abs() <= 1e-9,
        json!(h2),
    ));
    let hg = topological_entropy(&catalog::golden_mean())?;
    out.push(check(
        "h(golden mean) = ln phi within 1e-6",
        (hg - ln_phi).abs() <= 1e-6,
        json!(hg),
    ));
    for (name, g) in corpus_mixing_graphs() {
        if !classify_graph(&g)?.is_mixing {
            continue;
        }
        let h = topological_entropy(&g)?;
        let rr = irreducible_presentation(&g)?.ok_or(Error::NotMixing)?;
        let hm = markov_entropy(&parry_measure(&rr)?);
        out.push(check(
            format!("{name}: Parry entropy equals topological entropy within 1e-9"),
            (h - hm).abs() <= 1e-9,
            json!({ "topological": h, "parry": hm }),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_oracle_examples() {
        assert_eq!(frobenius_oracle(&[2, 3], 100), 2);
        assert_eq!(frobenius_oracle(&[3, 5], 100), 8);
        assert_eq!(frobenius_oracle(&[1], 100), 1);
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run("nope", 0), Err(CliError::Validation(_))));
    }

    #[test]
    fn small_suites_pass() {
        for c in ex4()
            .unwrap()
            .into_iter()
            .chain(parry_entropy().unwrap())
            .chain(lemma_glue(0).unwrap())
        {
            assert!(c.pass, "{}", c.claim);
        }
        for c in sgap_surgery(1, 50)
            .unwrap()
            .into_iter()
            .chain(de_convergence(20_000, 8).unwrap())
        {
            assert!(c.pass, "{}", c.claim);
        }
        for c in ex6(60).unwrap() {
            assert!(c.pass, "{}", c.claim);
        }
    }
}
