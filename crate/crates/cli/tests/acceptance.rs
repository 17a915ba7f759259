//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Run with `cargo test -p modpk --test acceptance`.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use modpk_core::{
    arith::next_prime, core_elements, core_project, cubic_roots_of_unity, discrete_log, eds_check,
    enumerate_flt_roots_mod_p2, find_core_triplets, is_prime, is_pth_power_residue, lift_flt_root, primitive_root,
    verify_core_theorem, PAdicDigits, PrimePowerModulus, Residue,
};

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut StdRng) -> Outcome>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn modpk(args: &[&str]) -> Result<(String, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_modpk"))
        .args(args)
        .env_remove("MODPK_CACHE")
        .output()
        .map_err(|e| format!("cannot run modpk: {e}"))?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!(
            "modpk {} exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok((String::from_utf8_lossy(&out.stdout).into_owned(), elapsed))
}

fn modpk_json(args: &[&str]) -> Result<Value, String> {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    let (out, _) = modpk(&full)?;
    serde_json::from_str(&out).map_err(|e| format!("bad JSON from modpk: {e}"))
}

fn primes_below(n: u64) -> impl Iterator<Item = u64> {
    (3..n).filter(|&p| is_prime(p))
}

fn mulm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powm(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, m);
        }
        b = mulm(b, b, m);
        e >>= 1;
    }
    r
}

fn values(v: &Value) -> Vec<i64> {
    v.as_array()
        .into_iter()
        .flatten()
        .map(|r| r["value"].as_i64().unwrap_or(-1))
        .collect()
}

fn field<'a>(v: &'a Value, key: &str) -> Vec<&'a str> {
    v.as_array()
        .into_iter()
        .flatten()
        .map(|r| r[key].as_str().unwrap_or("?"))
        .collect()
}

fn c1_analyze_7() -> Outcome {
    let (text, elapsed) = modpk(&["analyze", "7", "2"])?;
    ensure!(
        text.contains("core (base 7): 43 42 66 24 25 01"),
        "base-7 core row missing:\n{text}"
    );
    ensure!(
        text.contains("core (decimal): 31 30 48 18 19 1"),
        "decimal core row missing:\n{text}"
    );
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    let r = &modpk_json(&["analyze", "7", "2"])?["report"];
    ensure!(r["generator"]["value"] == 3, "generator {}", r["generator"]);
    ensure!(r["group_order"] == 42, "group order {}", r["group_order"]);
    ensure!(
        field(&r["core"], "padic") == ["43", "42", "66", "24", "25", "01"],
        "core {}",
        r["core"]
    );
    ensure!(values(&r["core"]) == [31, 30, 48, 18, 19, 1], "core {}", r["core"]);
    Ok(format!("core, generator 3, order 42 in {elapsed:?}"))
}

fn c2_analyze_5_and_3() -> Outcome {
    let (text5, _) = modpk(&["analyze", "5", "2", "--signed"])?;
    ensure!(
        text5.contains("core (signed): 7 -1 -7 1"),
        "signed core row missing:\n{text5}"
    );
    ensure!(text5.contains("no FLT roots mod 25"), "roots line missing:\n{text5}");
    let (text3, _) = modpk(&["analyze", "3", "2", "--signed"])?;
    ensure!(
        text3.contains("core (signed): -1 1"),
        "signed core row missing:\n{text3}"
    );
    ensure!(text3.contains("no FLT roots mod 9"), "roots line missing:\n{text3}");
    for (p, expected) in [("5", vec![7, -1, -7, 1]), ("3", vec![-1, 1])] {
        let r = &modpk_json(&["analyze", p, "2", "--signed"])?["report"];
        let signed: Vec<i64> = r["core"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|x| x["signed"].as_i64().unwrap_or(0))
            .collect();
        ensure!(signed == expected, "p={p} signed core {signed:?}");
        ensure!(
            r["flt_roots"]["pairs"].as_array().is_some_and(|a| a.is_empty()),
            "p={p} has roots"
        );
    }
    Ok("{7, -1, -7, 1} and {-1, 1}, no roots".into())
}

fn c3_cubic_roots() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for p in primes_below(500).filter(|p| p % 6 == 1) {
        for k in 1..=4 {
            let Ok(m) = PrimePowerModulus::new(p, k) else { continue };
            let n = m.m();
            let t = cubic_roots_of_unity(m).map_err(|e| format!("p={p} k={k}: {e}"))?;
            let a = t.a.value();
            ensure!(
                a != 1 && powm(a, 3, n) == 1,
                "p={p} k={k}: a={a} is not a nontrivial cube root"
            );
            let inv = t.a.inv_mod().map_err(|e| e.to_string())?.value();
            ensure!(mulm(a, inv, n) == 1, "p={p} k={k}: bad inverse");
            ensure!((a + inv + 1) % n == 0, "p={p} k={k}: a + 1/a != -1");
            ensure!(
                (1 + a + mulm(a, a, n)).is_multiple_of(n),
                "p={p} k={k}: 1 + a + a^2 != 0"
            );
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("{checked} moduli in {elapsed:?}"))
}

fn c4_eds() -> Outcome {
    let mut pairs = 0;
    for p in primes_below(500) {
        for pair in enumerate_flt_roots_mod_p2(p).map_err(|e| e.to_string())? {
            let (a, b) = (pair.a.value(), pair.b.value());
            let r = eds_check(pair.a, pair.b).map_err(|e| e.to_string())?;
            ensure!(r.holds && pair.eds_holds, "p={p}: EDS fails for ({a}, {b})");
            let n = p * p;
            ensure!(
                powm(a + b, p, n) == (powm(a, p, n) + powm(b, p, n)) % n,
                "p={p}: oracle disagrees ({a}, {b})"
            );
            pairs += 1;
        }
    }
    let seven = enumerate_flt_roots_mod_p2(7).map_err(|e| e.to_string())?;
    ensure!(seven.len() == 1, "p=7 has {} pairs", seven.len());
    for k in 2..=4 {
        let lifted = lift_flt_root(&seven[0], k).map_err(|e| e.to_string())?;
        ensure!(lifted.eds.holds, "p=7 pair fails EDS at k={k}");
    }
    Ok(format!("{pairs} pairs below 500, p=7 pair holds to k=4"))
}

fn c5_onset() -> Outcome {
    let start = Instant::now();
    let (text, _) = modpk(&["scan", "3", "200", "2"])?;
    let elapsed = start.elapsed();
    ensure!(
        text.contains("first proper triplet at p = 59"),
        "onset line missing:\n{text}"
    );
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    let r = &modpk_json(&["scan", "3", "200", "2"])?["report"];
    ensure!(r["first_onset"] == 59, "first_onset {}", r["first_onset"]);
    let records = r["records"].as_array().ok_or("no records")?;
    for rec in records {
        let p = rec["p"].as_u64().unwrap_or(0);
        if p < 59 {
            ensure!(rec["proper_triplet_count"] == 0, "proper triplet below 59 at p={p}");
        }
    }
    let at59 = records.iter().find(|rec| rec["p"] == 59).ok_or("p=59 missing")?;
    let t = &at59["first_proper"];
    let [a, b, c] = ["a", "b", "c"].map(|x| t[x]["value"].as_u64().unwrap_or(0));
    let n = 59 * 59;
    ensure!(a != b && b != c && a != c, "triple ({a}, {b}, {c}) is not proper");
    for (x, y) in [(a, b), (b, c), (c, a)] {
        ensure!((mulm(x + 1, y, n) + 1).is_multiple_of(n), "chain fails for {x} -> {y}");
    }
    ensure!(mulm(mulm(a, b, n), c, n) == 1, "abc != 1");
    Ok(format!("onset p = 59 with ({a}, {b}, {c}) in {elapsed:?}"))
}

/// Core of `Z/p^2` by brute force: units with `x^p = x`.
fn brute_core(p: u64) -> Vec<u64> {
    let n = p * p;
    (1..n).filter(|x| x % p != 0 && powm(*x, p, n) == *x).collect()
}

fn c6_oracles() -> Outcome {
    let mut triplets = 0;
    let mut roots = 0;
    for p in primes_below(62) {
        let n = p * p;
        let m = PrimePowerModulus::new(p, 2).map_err(|e| e.to_string())?;
        let core = brute_core(p);
        let in_core: BTreeSet<u64> = core.iter().copied().collect();

        let mut expected = BTreeSet::new();
        for &a in &core {
            for &b in &core {
                for &c in &core {
                    let chain = [(a, b), (b, c), (c, a)]
                        .iter()
                        .all(|&(x, y)| (mulm(x + 1, y, n) + 1).is_multiple_of(n));
                    if chain && a != b && b != c && a != c {
                        let rot = [[a, b, c], [b, c, a], [c, a, b]];
                        expected.insert(*rot.iter().min_by_key(|r| r[0]).unwrap());
                    }
                }
            }
        }
        let found: BTreeSet<[u64; 3]> = find_core_triplets(m)
            .map_err(|e| e.to_string())?
            .proper
            .iter()
            .map(|t| [t.a.value(), t.b.value(), t.c.value()])
            .collect();
        ensure!(found == expected, "p={p}: triplets {found:?} != oracle {expected:?}");
        triplets += found.len();

        let mut expected = BTreeSet::new();
        for u in (1..n).filter(|u| u % p != 0) {
            let alpha = core_project(m.residue(u)).map_err(|e| e.to_string())?.value();
            let beta = n - 1 - alpha;
            if in_core.contains(&beta) {
                expected.insert((alpha.min(beta), alpha.max(beta)));
            }
        }
        let found: BTreeSet<(u64, u64)> = enumerate_flt_roots_mod_p2(p)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|r| (r.a.value(), r.b.value()))
            .collect();
        ensure!(found == expected, "p={p}: roots {found:?} != oracle {expected:?}");
        roots += found.len();
    }
    Ok(format!("{triplets} triplets and {roots} root pairs match for p <= 61"))
}

fn c7_core_theorem() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    for p in primes_below(200) {
        for k in 1..=3 {
            let m = PrimePowerModulus::new(p, k).map_err(|e| e.to_string())?;
            let report = verify_core_theorem(m);
            ensure!(report.all_pass(), "p={p} k={k} fails");
            let divisors_above_one = (2..p).filter(|d| (p - 1) % d == 0).count();
            ensure!(
                report.checks.len() == divisors_above_one,
                "p={p} k={k}: wrong divisor count"
            );
            for c in &report.checks {
                ensure!(c.sum.value() == 0, "p={p} k={k} d={}: sum {}", c.d, c.sum.value());
            }
            checks += report.checks.len();
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("{checks} subgroup sums vanish in {elapsed:?}"))
}

fn c8_fst_extension() -> Outcome {
    let mut elements = 0;
    for p in primes_below(200) {
        for k in 1..=3 {
            let m = PrimePowerModulus::new(p, k).map_err(|e| e.to_string())?;
            let core = core_elements(m);
            ensure!(
                core.len() as u64 == p - 1,
                "p={p} k={k}: core has {} elements",
                core.len()
            );
            for n in core.elements() {
                let v = n.value();
                ensure!(powm(v, p, m.m()) == v, "p={p} k={k}: {v}^p != {v}");
            }
            elements += core.len();
        }
    }
    Ok(format!("{elements} core elements fixed by the p-th power"))
}

fn c9_hensel_consistency(rng: &mut StdRng) -> Outcome {
    let mut samples = 0;
    for p in primes_below(100) {
        let m3 = PrimePowerModulus::new(p, 3).map_err(|e| e.to_string())?;
        let n2 = p * p;
        let images: BTreeSet<u64> = (1..n2).filter(|x| x % p != 0).map(|x| powm(x, p, n2)).collect();
        for _ in 0..50 {
            let x = loop {
                let v = rng.gen_range(1..m3.m());
                if v % p != 0 {
                    break m3.residue(v);
                }
            };
            let high = is_pth_power_residue(x).map_err(|e| e.to_string())?;
            let low = x.truncate(2).map_err(|e| e.to_string())?;
            let low_status = is_pth_power_residue(low).map_err(|e| e.to_string())?;
            ensure!(high == low_status, "p={p} x={}: status differs", x.value());
            ensure!(
                high == images.contains(&low.value()),
                "p={p} x={}: disagrees with oracle",
                x.value()
            );
            samples += 1;
        }
    }
    Ok(format!("{samples} sampled units"))
}

fn random_modulus(rng: &mut StdRng) -> PrimePowerModulus {
    let p = next_prime(rng.gen_range(2..1_000_000)).expect("prime below 2^64");
    let mut k = rng.gen_range(1..=4);
    loop {
        if let Ok(m) = PrimePowerModulus::new(p, k) {
            return m;
        }
        k -= 1;
    }
}

fn random_unit(rng: &mut StdRng, m: PrimePowerModulus) -> Residue {
    loop {
        let r = m.residue(rng.gen_range(1..m.m()));
        if r.is_unit() {
            return r;
        }
    }
}

fn c10_kernel(rng: &mut StdRng) -> Outcome {
    const ROUNDS: usize = 2_500;
    for i in 0..ROUNDS {
        let m = random_modulus(rng);
        let n = m.m();
        let x = random_unit(rng, m);
        let e = rng.gen::<u64>();
        ensure!(
            x.pow_mod(e).value() == powm(x.value(), e, n),
            "pow {}^{e} mod {n}",
            x.value()
        );

        let inv = x.inv_mod().map_err(|e| e.to_string())?;
        ensure!(mulm(x.value(), inv.value(), n) == 1, "inverse of {} mod {n}", x.value());

        let dm = loop {
            let c = random_modulus(rng);
            if c.units_order() < 1 << 28 {
                break c;
            }
        };
        let g = primitive_root(dm);
        let t = rng.gen_range(0..dm.units_order());
        let log = discrete_log(g, g.pow_mod(t)).map_err(|e| e.to_string())?;
        ensure!(log == t, "log of g^{t} mod {} gave {log}", dm.m());

        let r = m.residue(rng.gen_range(0..n));
        let code = r.to_padic();
        let parsed = PAdicDigits::parse(&code.render(), m).map_err(|e| e.to_string())?;
        let value = code
            .digits()
            .iter()
            .fold(0u128, |acc, &d| acc * m.p() as u128 + d as u128);
        ensure!(
            parsed == code && value == r.value() as u128,
            "codec round {i} for {} mod {n}",
            r.value()
        );
        ensure!(
            code.to_residue().map_err(|e| e.to_string())? == r,
            "codec decode for {} mod {n}",
            r.value()
        );
    }
    Ok(format!("{} randomized checks", 4 * ROUNDS))
}

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(0x006d_6f64_706b);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("analyze 7 2 table", Box::new(|_| c1_analyze_7())),
        ("analyze 5 2 and 3 2 tables", Box::new(|_| c2_analyze_5_and_3())),
        ("cubic roots of unity", Box::new(|_| c3_cubic_roots())),
        ("EDS on every FLT root", Box::new(|_| c4_eds())),
        ("triplet onset", Box::new(|_| c5_onset())),
        ("brute-force oracle equivalence", Box::new(|_| c6_oracles())),
        ("core subgroup sums", Box::new(|_| c7_core_theorem())),
        ("core elements fixed by n^p", Box::new(|_| c8_fst_extension())),
        ("p-th power status lifts", Box::new(c9_hensel_consistency)),
        ("kernel round-trips", Box::new(c10_kernel)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        match check(&mut rng) {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
