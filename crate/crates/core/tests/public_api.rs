use balanced_pairing::identities::{run_check, CheckId};
use balanced_pairing::modular::{half_reduce, is_prime};
use balanced_pairing::pairing::{classify_chords, count_inversions_naive, s_prime};
use balanced_pairing::quartic;
use balanced_pairing::report::{run_scan, write_reports, OutputFormat, ReportLine, ScanConfig};
use balanced_pairing::search::{enumerate_all, Certificate, GeneralMatching};
use balanced_pairing::{Pairing, PrimeContext, QuarticSignature};
use proptest::prelude::*;

fn brute_counts(pairs: &[(u64, u64)]) -> (u64, u64, u64) {
    let (mut x, mut y, mut z) = (0, 0, 0);
    for &(a, a2) in pairs {
        for &(b, b2) in pairs {
            if a < b {
                match (a2 < b, b2 < a2) {
                    (true, _) => y += 1,
                    (false, true) => z += 1,
                    (false, false) => x += 1,
                }
            }
        }
    }
    (x, y, z)
}

/// Shuffle of `1..=n` into pairs driven by proptest-chosen swaps.
fn matching_from(n: u64, swaps: &[usize]) -> Vec<(u64, u64)> {
    let mut v: Vec<u64> = (1..=n).collect();
    for (i, &s) in swaps.iter().enumerate().take(v.len()) {
        let j = s % v.len();
        v.swap(i, j);
    }
    v.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect()
}

proptest! {
    #[test]
    fn classify_matches_brute(half in 1u64..40, swaps in prop::collection::vec(any::<usize>(), 80)) {
        let pairs = matching_from(2 * half, &swaps);
        let c = classify_chords(&pairs);
        prop_assert_eq!((c.crossing, c.disjoint, c.nesting), brute_counts(&pairs));
    }

    #[test]
    fn certificate_text_round_trips(half in 1u64..12, swaps in prop::collection::vec(any::<usize>(), 24)) {
        let m = GeneralMatching::new(2 * half, matching_from(2 * half, &swaps)).unwrap();
        let cert = Certificate::new(m);
        let back: Certificate = cert.to_string().parse().unwrap();
        prop_assert_eq!(back, cert);
    }

    #[test]
    fn s_prime_is_naive_inversion_count(idx in 0usize..100, m in 1i64..50) {
        let p = (3..2000).filter(|&p| is_prime(p)).nth(idx).unwrap();
        prop_assume!(m as u64 % p != 0);
        let ctx = PrimeContext::new(p).unwrap();
        let seq: Vec<u64> = (1..=ctx.half() as i64)
            .map(|i| half_reduce(m * i * i, p).unwrap())
            .collect();
        prop_assert_eq!(s_prime(&ctx, m).unwrap(), count_inversions_naive(&seq));
    }
}

#[test]
fn pairing_is_an_involution_without_fixed_points() {
    for p in (5..3000).filter(|&p| p % 4 == 1 && is_prime(p)) {
        let pairing = Pairing::for_prime(p).unwrap();
        let t = pairing.context().t() as i64;
        assert_eq!(pairing.len() as u64, (p - 1) / 4);
        for (a, b) in pairing.pairs() {
            assert_eq!(half_reduce(t * a as i64, p).unwrap(), b);
            assert_eq!(half_reduce(t * b as i64, p).unwrap(), a);
        }
    }
}

#[test]
fn quartic_formulas_against_double_loop() {
    for p in (5..200).filter(|&p| p % 4 == 1 && is_prime(p)) {
        let ctx = PrimeContext::new(p).unwrap();
        let sig = QuarticSignature::new(&ctx).unwrap();
        for m in 1..p as i64 {
            let brute = quartic::brute_n_loop(&ctx, m).unwrap();
            assert_eq!(quartic::brute_n(&ctx, m).unwrap(), brute);
            assert_eq!(quartic::formula_n(&ctx, &sig, m).unwrap(), brute as i64, "p={p} m={m}");
            assert_eq!(
                quartic::formula_nprime(&ctx, &sig, m).unwrap(),
                quartic::brute_nprime(&ctx, sig.g(), m).unwrap()
            );
        }
    }
}

#[test]
fn every_check_passes_on_small_primes() {
    for p in (3..300).filter(|&p| is_prime(p)) {
        let ctx = PrimeContext::new(p).unwrap();
        for check in CheckId::ALL {
            for r in run_check(check, &ctx, &[1, 2, 3, 5]).unwrap() {
                assert!(r.passed, "{check} at p={p}: {r:?}");
            }
        }
    }
}

#[test]
fn enumeration_visits_each_matching_once() {
    let mut seen = std::collections::HashSet::new();
    let r = enumerate_all(10, 16, 0, |pairs, counts| {
        assert!(seen.insert(pairs.to_vec()));
        assert_eq!((counts.crossing, counts.disjoint, counts.nesting), brute_counts(pairs));
    })
    .unwrap();
    assert_eq!(seen.len(), 945);
    assert_eq!(r.balanced_count, 0);
}

#[test]
fn csv_and_json_lines_carry_the_same_records() {
    let config = ScanConfig::new(5, 120, CheckId::ALL.to_vec());
    let reports = run_scan(&config, 2).unwrap();
    let mut json = Vec::new();
    write_reports(&mut json, OutputFormat::JsonLines, &reports).unwrap();
    let mut csv_out = Vec::new();
    write_reports(&mut csv_out, OutputFormat::Csv, &reports).unwrap();
    let from_json: Vec<serde_json::Value> = String::from_utf8(json)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let mut rdr = csv::Reader::from_reader(csv_out.as_slice());
    let from_csv: Vec<ReportLine> = rdr
        .records()
        .map(|r| ReportLine::from_csv_record(&r.unwrap()).unwrap())
        .collect();
    assert_eq!(from_json.len(), from_csv.len());
    for (j, c) in from_json.iter().zip(&from_csv) {
        assert_eq!(j, &serde_json::to_value(c).unwrap());
    }
}
