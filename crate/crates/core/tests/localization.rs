use std::collections::BTreeMap;

use qk_core::catalog::{blown_up_plane, p1xp1, projective_space};
use qk_core::localization::*;
use qk_core::ring::{binomial, int, vars, MultiLaurent, NilpotentCtx, Rational, Ring, RootOfUnity, Truncated, ZRational};

/// Weight multisets with entries in `[-3, 3] \ {0}` and size `1..=max_len`, sorted.
fn weight_multisets(max_len: usize) -> Vec<Vec<i64>> {
    let weights: Vec<i64> = (-3..=3).filter(|&w| w != 0).collect();
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for base in &frontier {
            for &w in &weights {
                if base.last().is_none_or(|&l| l <= w) {
                    let mut v = base.clone();
                    v.push(w);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.retain(|v| !v.is_empty());
    out
}

#[test]
fn mixed_sign_inverted_euler_classes_have_zero_residue() {
    let mut checked = 0;
    for ws in weight_multisets(4) {
        let mixed = ws.iter().any(|&w| w > 0) && ws.iter().any(|&w| w < 0);
        let trivial = IsotypicBundle::<Rational>::trivial(&(), &ws).unwrap();
        let value = residue(&inverse_euler_class(&trivial).unwrap()).unwrap();
        if mixed {
            assert_eq!(value, int(0), "{ws:?}");
        }
        for degree in 1..=2 {
            let names: Vec<String> = (0..ws.len()).map(|i| format!("N{i}")).collect();
            let ctx = NilpotentCtx::<Rational>::new((), &names, degree);
            let comps = ws
                .iter()
                .enumerate()
                .map(|(i, &w)| IsotypicComponent {
                    weight: w,
                    roots: vec![Truncated::one_of(&ctx).plus(&Truncated::generator(&ctx, i))],
                    root_of_unity: None,
                })
                .collect();
            let e = IsotypicBundle::new(&ctx, comps).unwrap();
            let value = residue(&inverse_euler_class(&e).unwrap()).unwrap();
            if mixed {
                assert!(value.vanishes(), "{ws:?} degree {degree}: {value:?}");
            }
            checked += 1;
        }
    }
    assert!(checked > 200);
}

#[test]
fn first_examples() {
    let pos = IsotypicBundle::<Rational>::trivial(&(), &[1]).unwrap();
    assert_eq!(residue(&inverse_euler_class(&pos).unwrap()).unwrap(), int(1));
    let neg = IsotypicBundle::<Rational>::trivial(&(), &[-1]).unwrap();
    assert_eq!(residue(&inverse_euler_class(&neg).unwrap()).unwrap(), int(-1));
    // 1 / ((1 - z^-1)(z - 1))
    let nodal = ZRational::one(&()).div_factor(-1, &int(1)).unwrap().div_factor(1, &int(1)).unwrap().scale(&int(-1));
    assert_eq!(residue(&nodal).unwrap(), int(0));
}

#[test]
fn symmetric_algebra_residues() {
    for n in 0..=4u32 {
        // Sym(z^-1 C^{n+1}) as the inverted Euler class of n+1 copies of weight one.
        let e = IsotypicBundle::<Rational>::trivial(&(), &vec![1; n as usize + 1]).unwrap();
        let inv = inverse_euler_class(&e).unwrap();
        assert_eq!(inv, sym_trivial(n + 1));
        for k in 0..=6i64 {
            let f = inv.mul_monomial(k, &int(1));
            assert_eq!(residue(&f).unwrap(), Rational::from_integer(binomial(n as i64 + k, n as i64)));
        }
    }
}

#[test]
fn a_hat_of_opposite_weights() {
    let e = IsotypicBundle::<Rational>::trivial(&(), &[1, -1]).unwrap();
    let single = a_hat_factor(&IsotypicBundle::<Rational>::trivial(&(), &[1]).unwrap()).unwrap();
    assert_eq!(a_hat_factor(&e).unwrap(), single.times(&single).scale(&int(-1)));
}

/// Independent count: sections of O(k) on P^1 are `x0^i x1^(k-i)`.
fn section_character(k: i64, a: &[i64]) -> MultiLaurent {
    let z = vars(&["z"]);
    let terms = (0..=k).map(|i| (vec![a[0] * i + a[1] * (k - i)], int(1)));
    MultiLaurent::from_terms(&z, terms)
}

#[test]
fn projective_line_section_count() {
    let p1 = projective_space(1);
    for k in 0..=6 {
        for a in [vec![1, 3], vec![-2, 5]] {
            let input = LocalizationInput::from_datum(&p1, &[k], a.clone()).unwrap();
            let chi = atiyah_segal_chi(&input).unwrap();
            assert_eq!(chi.character, section_character(k, &a), "k={k} a={a:?}");
            assert_eq!(chi.euler_characteristic, int(k + 1));
        }
    }
}

#[test]
fn independent_of_one_parameter_subgroup() {
    let cases: Vec<(qk_core::toric::ToricGitDatum, Vec<Vec<i64>>)> = vec![
        (projective_space(2), vec![vec![0], vec![2], vec![-3]]),
        (p1xp1(), vec![vec![0, 0], vec![1, 2], vec![-1, 3]]),
        (blown_up_plane(), vec![vec![0, 0], vec![1, 1], vec![2, -1]]),
    ];
    for (datum, classes) in cases {
        for psi in classes {
            let input = LocalizationInput::from_datum(&datum, &psi, vec![]).unwrap();
            let a = generic_one_ps(&input.points, datum.k(), 0).unwrap();
            let b = generic_one_ps(&input.points, datum.k(), 3).unwrap();
            assert_ne!(a, b);
            let chi_a = atiyah_segal_chi(&LocalizationInput { one_ps: a, ..input.clone() }).unwrap();
            let chi_b = atiyah_segal_chi(&LocalizationInput { one_ps: b, ..input }).unwrap();
            assert_eq!(chi_a.euler_characteristic, chi_b.euler_characteristic);
        }
    }
    let structure = LocalizationInput::from_datum(&projective_space(4), &[0], vec![1, 2, 4, 8, 16]).unwrap();
    assert_eq!(atiyah_segal_chi(&structure).unwrap().euler_characteristic, int(1));
}

#[test]
fn localization_input_json_roundtrip() {
    let input = LocalizationInput::from_datum(&p1xp1(), &[1, -1], vec![1, 4, 2, 9]).unwrap();
    assert_eq!(LocalizationInput::from_json(&input.to_json()).unwrap(), input);
}

/// Symmetric `(weight, rank)` multisets: pairs `(m, r), (-m, r)`.
fn symmetric_multisets() -> Vec<Vec<WeightMult>> {
    let mut pairs = Vec::new();
    for m in 1..=3 {
        for r in 1..=4u32 {
            pairs.push((m, r));
        }
    }
    let mut out = Vec::new();
    for (i, &(m1, r1)) in pairs.iter().enumerate() {
        out.push(vec![WeightMult::new(m1, r1), WeightMult::new(-m1, r1)]);
        for &(m2, r2) in &pairs[i..] {
            if r1 + r2 <= 4 {
                out.push(vec![
                    WeightMult::new(m1, r1),
                    WeightMult::new(-m1, r1),
                    WeightMult::new(m2, r2),
                    WeightMult::new(-m2, r2),
                ]);
            }
        }
    }
    out
}

#[test]
fn crepant_criterion() {
    for ws in symmetric_multisets() {
        let report = crepant_check(&ws).unwrap();
        assert!(report.simply_crepant);
        assert!(report.z_independent, "{ws:?}");
        assert!(report.constant.is_some(), "{ws:?}");
    }
    let witness = [WeightMult::new(1, 2), WeightMult::new(-1, 1)];
    let report = crepant_check(&witness).unwrap();
    assert!(!report.simply_crepant && !report.z_independent);
    let (a, b) = report.samples.unwrap();
    assert_ne!(a, b);
}

#[test]
fn crepant_with_roots_of_unity() {
    let mut seen = BTreeMap::new();
    for order in [2u64, 3, 4] {
        for num in 1..order as i64 {
            let zeta = RootOfUnity::new(num, order).unwrap();
            let paired = [
                WeightMult { weight: 2, rank: 1, root_of_unity: Some(zeta.clone()) },
                WeightMult { weight: -2, rank: 1, root_of_unity: Some(zeta.inverse()) },
            ];
            seen.insert((num, order), is_z_independent(&delta_factor(&paired).unwrap()));
        }
    }
    assert!(seen.values().all(|&b| b), "{seen:?}");
    // Same weights, unpaired roots: the multiset test passes but Delta moves.
    let unpaired = [
        WeightMult { weight: 1, rank: 1, root_of_unity: Some(RootOfUnity::new(1, 2).unwrap()) },
        WeightMult::new(-1, 1),
    ];
    assert!(is_simply_crepant(&unpaired));
    assert!(!is_z_independent(&delta_factor(&unpaired).unwrap()));
}
