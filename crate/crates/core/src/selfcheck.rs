//! Built-in diagnostics: a quick structural suite and the report on the
//! two readings of the projection to the alternating-sum subalgebra.

use serde::Serialize;

use crate::chain::ChainComplex;
use crate::crossed::representable_crossed;
use crate::dold_kan::{counit, inflate, moore};
use crate::family::{lookup, SetMap};
use crate::field::Field;
use crate::generate::{random_chain_complex, random_full_module, seeded};
use crate::operator::{
    d_element, enumerate_d_monomials, enumerate_face_words, eta, eta_operator, from_d_basis,
    to_d_basis, DMonomial, DWord, EtaInterpretation, OmegaElement, SigmaWord,
};
use crate::simplicial::free_standard;

/// One interpretation's behavior on the splitting and on products.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EtaReport {
    pub interpretation: String,
    pub splitting_checked: usize,
    pub splitting_failures: Vec<String>,
    pub splitting_holds: bool,
    pub products_checked: usize,
    pub product_failures: usize,
    pub first_product_failures: Vec<String>,
    pub multiplicative: bool,
}

fn generator_monomial(n: usize) -> DMonomial {
    DMonomial::new(
        SigmaWord::new(n, vec![]).expect("empty word"),
        DWord::new(n, vec![0]).expect("single bottom index"),
    )
    .expect("endpoints match")
}

fn interpretation_report(
    field: Field,
    interpretation: EtaInterpretation,
    split_level: usize,
    pair_level: usize,
) -> EtaReport {
    let name = match interpretation {
        EtaInterpretation::Literal => "literal",
        EtaInterpretation::Amended => "amended",
    };
    let mut splitting_checked = 0;
    let mut splitting_failures = Vec::new();
    for n in 0..=split_level {
        let cases = [
            (DMonomial::identity(n), OmegaElement::unit(field, n)),
            (generator_monomial(n), OmegaElement::d_generator(field, n)),
        ];
        for (monomial, expected) in cases {
            splitting_checked += 1;
            let got = eta(field, &monomial, interpretation);
            if got != expected {
                splitting_failures.push(format!(
                    "eta({monomial}) = {got}, expected {expected}"
                ));
            }
        }
    }
    let mut products_checked = 0;
    let mut product_failures = 0;
    let mut first_product_failures = Vec::new();
    for a in 0..=pair_level {
        for b in 0..=pair_level {
            let left = enumerate_d_monomials(a, b);
            for c in 0..=pair_level {
                let right = enumerate_d_monomials(b, c);
                for x in &left {
                    let x_op = x.to_operator(field);
                    let ex = eta(field, x, interpretation);
                    for y in &right {
                        products_checked += 1;
                        let product = x_op
                            .compose(&y.to_operator(field))
                            .expect("endpoints match");
                        let lhs = eta_operator(&product, interpretation)
                            .expect("products of monomials stay in the span");
                        let rhs = ex.mul(&eta(field, y, interpretation));
                        if lhs != rhs {
                            product_failures += 1;
                            if first_product_failures.len() < 3 {
                                first_product_failures.push(format!(
                                    "eta(({x})({y})) = {lhs}, but the product of images is {rhs}"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    EtaReport {
        interpretation: name.to_string(),
        splitting_checked,
        splitting_holds: splitting_failures.is_empty(),
        splitting_failures,
        products_checked,
        product_failures,
        first_product_failures,
        multiplicative: product_failures == 0,
    }
}

/// Compares the two readings side by side: how each behaves on the
/// generators of the subalgebra and on all composable monomial pairs up
/// to the given levels.
pub fn eta_report(field: Field, split_level: usize, pair_level: usize) -> Vec<EtaReport> {
    vec![
        interpretation_report(field, EtaInterpretation::Literal, split_level, pair_level),
        interpretation_report(field, EtaInterpretation::Amended, split_level, pair_level),
    ]
}

pub fn render_eta_report(reports: &[EtaReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "interpretation {}: splitting {} ({} checks), products {} ({} checks, {} failures)\n",
            r.interpretation,
            if r.splitting_holds { "holds" } else { "fails" },
            r.splitting_checked,
            if r.multiplicative { "commute" } else { "do not commute" },
            r.products_checked,
            r.product_failures,
        ));
        for w in r.splitting_failures.iter().take(3) {
            out.push_str(&format!("  {w}\n"));
        }
        for w in &r.first_product_failures {
            out.push_str(&format!("  {w}\n"));
        }
    }
    out
}

fn check_face_relations(field: Field) -> bool {
    for n in 0..=4usize {
        for i in 0..=n {
            let first = d_element(field, i, n).expect("in range");
            let second = d_element(field, i, n + 1).expect("in range");
            if !first.compose(&second).expect("endpoints match").is_zero() {
                return false;
            }
        }
    }
    true
}

fn check_normal_form_round_trip(field: Field) -> bool {
    for source in 0..=3usize {
        for len in 0..=3usize {
            for w in enumerate_face_words(source, len) {
                if !w.is_sub_maximal() {
                    continue;
                }
                let expansion = match to_d_basis(field, &w) {
                    Ok(e) => e,
                    Err(_) => return false,
                };
                if from_d_basis(&expansion) != w.to_operator(field) {
                    return false;
                }
            }
        }
    }
    true
}

fn check_moore_inverts_inflation(field: Field) -> bool {
    for seed in 0..3 {
        let c = random_chain_complex(field, 4, 5, &mut seeded(seed));
        let back = inflate(&c).and_then(|x| moore(&x));
        if back.as_ref() != Ok(&c) {
            return false;
        }
    }
    true
}

fn check_homotopy_matches_homology(field: Field) -> bool {
    let x = random_full_module(field, 3, 2, &mut seeded(1));
    let pi = match x.pi_dims() {
        Ok(v) => v,
        Err(_) => return false,
    };
    let homology = match moore(&x) {
        Ok(n) => n.betti(),
        Err(_) => return false,
    };
    pi.iter().zip(&homology).all(|(a, b)| a == b)
}

fn check_counit_is_an_equivalence(field: Field) -> bool {
    let x = free_standard(field, 1, 3);
    counit(&x)
        .and_then(|f| f.is_chain_equivalence())
        .unwrap_or(false)
}

fn check_factorizations_recompose() -> bool {
    let family = lookup("symmetric").expect("registered");
    for n in 0..=3usize {
        for m in 0..=3usize {
            let total = (m + 1).pow(n as u32 + 1);
            for code in 0..total {
                let mut rest = code;
                let values: Vec<usize> = (0..=n)
                    .map(|_| {
                        let v = rest % (m + 1);
                        rest /= m + 1;
                        v
                    })
                    .collect();
                let u = SetMap::new(m, values).expect("bounded values");
                let (mono, perm) = match family.factorize(&u) {
                    Ok(pair) => pair,
                    Err(_) => return false,
                };
                let recomposed: Vec<usize> =
                    (0..=n).map(|x| mono.apply(perm.apply(x))).collect();
                if recomposed != u.values() {
                    return false;
                }
            }
        }
    }
    true
}

fn check_representables_validate(field: Field) -> bool {
    ["cyclic", "symmetric"].iter().all(|name| {
        representable_crossed(field, name, 2)
            .and_then(|m| m.validate())
            .is_ok()
    })
}

fn check_point_resolution_is_exact(field: Field) -> bool {
    for m in 1..=4usize {
        let r = match crate::resolution::point_resolution(field, m, 4) {
            Ok(r) => r,
            Err(_) => return false,
        };
        if r.validate().is_err() {
            return false;
        }
        let betti = ChainComplex::betti(&r);
        if betti[1..r.max_degree()].iter().any(|&b| b != 0) {
            return false;
        }
    }
    true
}

/// Runs the quick structural suite and reports one verdict per check.
pub fn run_selfcheck(field: Field) -> Vec<(String, bool)> {
    vec![
        (
            "face relations compose to zero".to_string(),
            check_face_relations(field),
        ),
        (
            "normal form round trip".to_string(),
            check_normal_form_round_trip(field),
        ),
        (
            "normalization inverts inflation".to_string(),
            check_moore_inverts_inflation(field),
        ),
        (
            "homotopy matches homology".to_string(),
            check_homotopy_matches_homology(field),
        ),
        (
            "counit is an equivalence".to_string(),
            check_counit_is_an_equivalence(field),
        ),
        (
            "factorizations recompose".to_string(),
            check_factorizations_recompose(),
        ),
        (
            "representable crossed modules validate".to_string(),
            check_representables_validate(field),
        ),
        (
            "point resolution is exact".to_string(),
            check_point_resolution_is_exact(field),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selfcheck_passes_over_both_fields() {
        for field in [Field::Rational, Field::Prime(5)] {
            for (name, ok) in run_selfcheck(field) {
                assert!(ok, "{name} over {field}");
            }
        }
    }

    #[test]
    fn the_literal_reading_fails_to_split_and_the_amended_one_splits() {
        let reports = eta_report(Field::Rational, 3, 2);
        assert!(!reports[0].splitting_holds);
        assert!(reports[1].splitting_holds);
    }

    #[test]
    fn report_rendering_is_stable() {
        let a = render_eta_report(&eta_report(Field::Rational, 2, 2));
        let b = render_eta_report(&eta_report(Field::Rational, 2, 2));
        assert_eq!(a, b);
        assert!(a.contains("interpretation literal"));
    }
}
