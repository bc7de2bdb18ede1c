//! The acceptance criteria, runnable from tests and from the command line.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::congruence::{
    closure_bruteforce, congruence_from_contracted, forcing_ideal, meet_congruences,
    principal_bruteforce, Congruence,
};
use crate::error::{Error, Result};
use crate::family::{baxter_word, named_family, twisted_baxter_word, CongruenceFamily, Family};
use crate::fan::{build_fan, check_fan_poset_properties, is_simplicial, mobius_violation, Outcome};
use crate::hopf::{check_axioms, check_embedding, MalvenutoReutenauer, QuotientHopf};
use crate::oracle::{catalan_numbers, min_product, satisfies_pell, west_baxter};
use crate::perm::{all_permutations, par_count};
use crate::weak_order::join_irreducibles;

/// Seed for the sampled generator sets of criterion 6.
pub const ORACLE_SEED: u64 = 0x5eed;

/// Families checked by the Hopf and Möbius criteria.
pub const HOPF_FAMILIES: [&str; 5] = ["tamari", "descent", "twisted-baxter", "snk 3", "pnk 3"];

/// Families checked by the fan criteria.
pub const FAN_FAMILIES: [&str; 4] = ["trivial", "tamari", "descent", "twisted-baxter"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    All,
    Lattice,
    Hopf,
    Fan,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "lattice" => Ok(Suite::Lattice),
            "hopf" => Ok(Suite::Hopf),
            "fan" => Ok(Suite::Fan),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

impl Suite {
    pub fn criteria(self) -> Vec<usize> {
        match self {
            Suite::All => (1..=12).collect(),
            Suite::Lattice => vec![1, 2, 3, 4, 5, 6, 9],
            Suite::Hopf => vec![7, 8],
            Suite::Fan => vec![10, 11, 12],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: u64,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{:>2}] {} ({:.2} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

struct Spec {
    name: &'static str,
    limit: u64,
    run: fn() -> Result<std::result::Result<String, String>>,
}

fn spec(id: usize) -> Option<Spec> {
    let (name, limit, run): (&'static str, u64, fn() -> _) = match id {
        1 => ("Tamari counts are Catalan", 60, c1_tamari),
        2 => ("descent counts are powers of two", 120, c2_descent),
        3 => ("S_{n,k} product formula", 60, c3_snk),
        4 => ("twisted Baxter and Baxter are equinumerous", 600, c4_baxter),
        5 => ("meet of the two Tamari families", 600, c5_meet),
        6 => ("forcing ideals match brute-force closure", 300, c6_oracle),
        7 => ("Hopf axioms", 600, c7_hopf),
        8 => ("embedding of quotient algebras", 600, c8_embedding),
        9 => ("Pell recurrence for P_{n,3}", 60, c9_pell),
        10 => ("fan suite", 600, c10_fan),
        11 => ("Möbius function on atomic intervals", 600, c11_mobius),
        12 => ("Dehn-Sommerville, shelling and flag", 600, c12_simplicial),
        _ => return None,
    };
    Some(Spec { name, limit, run })
}

/// Runs one criterion. A criterion that finishes correctly but over its time
/// budget is reported as failed.
pub fn run_criterion(id: usize) -> Result<CriterionResult> {
    let s = spec(id).ok_or_else(|| Error::Parse(format!("no criterion {id}")))?;
    let start = Instant::now();
    let outcome = (s.run)();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    if passed && elapsed > Duration::from_secs(s.limit) {
        passed = false;
        detail = format!("{detail}; exceeded {} s", s.limit);
    }
    Ok(CriterionResult {
        id,
        name: s.name,
        passed,
        detail,
        seconds: elapsed.as_secs_f64(),
        limit_seconds: s.limit,
    })
}

pub fn run_suite(suite: Suite) -> Result<Vec<CriterionResult>> {
    suite.criteria().into_iter().map(run_criterion).collect()
}

type Verdict = Result<std::result::Result<String, String>>;

fn verdict(failure: Option<String>, ok: impl Into<String>) -> Verdict {
    Ok(failure.map_or_else(|| Ok(ok.into()), Err))
}

fn family(name: &str) -> Result<Family> {
    Family::named(name)
}

fn c1_tamari() -> Verdict {
    let spec = named_family("tamari")?;
    let cat = catalan_numbers(9);
    let counts: Vec<u64> = (1..=9)
        .map(|n| spec.count_bottoms(n))
        .collect::<Result<_>>()?;
    let failure = (counts[..] != cat[1..]).then(|| format!("counts {counts:?}"));
    verdict(failure, format!("{counts:?}"))
}

fn c2_descent() -> Verdict {
    let spec = named_family("descent")?;
    let counts: Vec<u64> = (1..=10)
        .map(|n| spec.count_bottoms(n))
        .collect::<Result<_>>()?;
    let failure = counts
        .iter()
        .enumerate()
        .find(|&(i, &c)| c != 1 << i)
        .map(|(i, c)| format!("n = {}: {c}", i + 1));
    verdict(failure, format!("{counts:?}"))
}

fn c3_snk() -> Verdict {
    for k in 1..=8 {
        let spec = named_family(&format!("snk {k}"))?;
        for n in 1..=8 {
            let got = spec.count_bottoms(n)?;
            if got != min_product(n, k) {
                return verdict(
                    Some(format!("n = {n}, k = {k}: {got} vs {}", min_product(n, k))),
                    "",
                );
            }
        }
    }
    verdict(None, "all n, k ≤ 8")
}

fn c4_baxter() -> Verdict {
    let mut counts = Vec::new();
    for n in 1..=10 {
        let tb = par_count(n, twisted_baxter_word);
        let bx = par_count(n, baxter_word);
        if tb != bx {
            return verdict(Some(format!("n = {n}: {tb} twisted vs {bx} Baxter")), "");
        }
        counts.push(tb);
    }
    for n in 1..=8 {
        let west = all_permutations(n).filter(west_baxter).count() as u64;
        if west != counts[n - 1] {
            return verdict(Some(format!("n = {n}: West count {west}")), "");
        }
    }
    verdict(None, format!("{counts:?}"))
}

fn c5_meet() -> Verdict {
    let (tb, a, b) = (
        named_family("twisted-baxter")?,
        crate::family::FamilySpec::h(["231".parse()?])?,
        named_family("tamari")?,
    );
    for n in 1..=8 {
        let lhs = tb.contracted_jis(n)?;
        let rhs: BTreeSet<_> = a
            .contracted_jis(n)?
            .intersection(&b.contracted_jis(n)?)
            .copied()
            .collect();
        if lhs != rhs {
            return verdict(Some(format!("contracted sets differ at n = {n}")), "");
        }
    }
    let (ft, fa, fb) = (Family::new(tb), Family::new(a), Family::new(b));
    for n in 1..=7 {
        let meet = meet_congruences(&*fa.congruence(n)?, &*fb.congruence(n)?)?;
        if *ft.congruence(n)? != meet {
            return verdict(Some(format!("partitions differ at n = {n}")), "");
        }
    }
    verdict(None, "JI sets n ≤ 8, partitions n ≤ 7")
}

fn c6_oracle() -> Verdict {
    let mut checked = 0;
    for n in 1..=5 {
        for g in join_irreducibles(n) {
            let brute = principal_bruteforce(&g)?;
            let fast = congruence_from_contracted(n, &forcing_ideal(n, &[g])?)?;
            if brute != fast {
                return verdict(Some(format!("γ = {g}")), "");
            }
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let jis = join_irreducibles(6);
    for trial in 0..50 {
        let k = rng.gen_range(1..=3);
        let gens: Vec<_> = jis.choose_multiple(&mut rng, k).copied().collect();
        let pairs: Vec<_> = gens
            .iter()
            .map(|g| (g.to_permutation(), g.lower_cover()))
            .collect();
        let brute = closure_bruteforce(6, &pairs)?;
        let fast = congruence_from_contracted(6, &forcing_ideal(6, &gens)?)?;
        if brute != fast {
            return verdict(Some(format!("trial {trial}: generators {gens:?}")), "");
        }
    }
    verdict(
        None,
        format!("{checked} principal congruences, 50 sampled at n = 6"),
    )
}

fn c7_hopf() -> Verdict {
    let mr = check_axioms(&MalvenutoReutenauer::new(), 5)?;
    if let Some((law, msg)) = mr.first_failure() {
        return verdict(Some(format!("MR {law}: {msg}")), "");
    }
    for name in HOPF_FAMILIES {
        let q = QuotientHopf::new(named_family(name)?);
        let report = check_axioms(&q, 6)?;
        if let Some((law, msg)) = report.first_failure() {
            return verdict(Some(format!("{name} {law}: {msg}")), "");
        }
    }
    verdict(None, "MR to degree 5, five quotients to degree 6")
}

fn c8_embedding() -> Verdict {
    for name in HOPF_FAMILIES {
        let q = QuotientHopf::new(named_family(name)?);
        let report = check_embedding(&q, 6)?;
        if let Some((law, msg)) = report.first_failure() {
            return verdict(Some(format!("{name} {law}: {msg}")), "");
        }
    }
    verdict(None, "five families to degree 6")
}

fn c9_pell() -> Verdict {
    let spec = named_family("pnk 3")?;
    let mut a = vec![1u64];
    for n in 1..=9 {
        a.push(spec.count_bottoms(n)?);
    }
    let failure = (!satisfies_pell(&a, 3)).then(|| format!("{:?}", &a[1..]));
    verdict(failure, format!("{:?}", &a[1..]))
}

fn c10_fan() -> Verdict {
    for name in FAN_FAMILIES {
        let fam = family(name)?;
        for n in 1..=5 {
            let fan = build_fan(fam.congruence(n)?)?;
            let report = check_fan_poset_properties(&fan, &[]);
            if let Some(c) = report
                .checks
                .iter()
                .find(|c| matches!(c.outcome, Outcome::Fail(_)))
            {
                return verdict(
                    Some(format!("{name} n = {n}, {}: {:?}", c.name, c.outcome)),
                    "",
                );
            }
            if name == "tamari" && n == 4 && fan.f_vector() != [9, 21, 14] {
                return verdict(
                    Some(format!("Tamari n = 4 f-vector {:?}", fan.f_vector())),
                    "",
                );
            }
        }
    }
    let tb = family("twisted-baxter")?;
    let simp: Vec<bool> = (1..=5)
        .map(|n| tb.congruence(n).map(|c| is_simplicial(&c)))
        .collect::<Result<_>>()?;
    let first = simp.iter().position(|s| !s).map(|i| i + 1);
    if first != Some(4) {
        return verdict(Some(format!("twisted Baxter simpliciality {simp:?}")), "");
    }
    verdict(
        None,
        "four families, n ≤ 5; twisted Baxter first non-simplicial at n = 4",
    )
}

fn all_quotient_families() -> Vec<&'static str> {
    let mut v: Vec<&str> = FAN_FAMILIES.to_vec();
    v.extend(HOPF_FAMILIES.iter().filter(|f| !FAN_FAMILIES.contains(f)));
    v
}

fn c11_mobius() -> Verdict {
    for name in all_quotient_families() {
        let fam = family(name)?;
        for n in 1..=6 {
            let cong = fam.congruence(n)?;
            if let Some((a, b, got, want)) = mobius_violation(cong.quotient().poset()) {
                return verdict(
                    Some(format!(
                        "{name} n = {n}: μ({a},{b}) = {got}, expected {want}"
                    )),
                    "",
                );
            }
        }
    }
    verdict(None, "six families, n ≤ 6")
}

fn c12_simplicial() -> Verdict {
    let mut fans = 0;
    for name in all_quotient_families() {
        let fam = family(name)?;
        for n in 1..=5 {
            let cong: Arc<Congruence> = fam.congruence(n)?;
            if !is_simplicial(&cong) {
                continue;
            }
            let fan = build_fan(cong)?;
            let report = check_fan_poset_properties(&fan, &crate::fan::SHELLING_SEEDS);
            for check in ["Dehn-Sommerville", "shelling", "flag"] {
                if report.outcome(check) != Some(&Outcome::Pass) {
                    return verdict(
                        Some(format!(
                            "{name} n = {n}, {check}: {:?}",
                            report.outcome(check)
                        )),
                        "",
                    );
                }
            }
            fans += 1;
        }
    }
    verdict(None, format!("{fans} simplicial fans"))
}
