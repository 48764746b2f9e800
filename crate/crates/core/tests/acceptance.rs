//! Acceptance suite: one verdict line per promised behavior, checked over
//! the rationals and then repeated over F_5.

use std::time::Instant;

use rand::Rng;

use deltak::crossed::{
    crossed_compose, representable_crossed, CrossedMap, CrossedModule, CrossedMorphism,
};
use deltak::delta::enumerate_hom;
use deltak::dold_kan::{counit, inflate, moore, moore_inclusion};
use deltak::family::{lookup, GroupFamily, Permutation, SetMap};
use deltak::field::Field;
use deltak::generate::{
    random_chain_complex, random_full_module, random_simplicial_map, seeded,
};
use deltak::matrix::Matrix;
use deltak::operator::{
    d_element, enumerate_d_words, enumerate_face_words, eta, from_d_basis, operator_to_d_basis,
    to_d_basis, DMonomial, DWord, EtaInterpretation, OmegaElement, SigmaWord,
};
use deltak::resolution::{point_resolution, resolution_basis};
use deltak::selfcheck::{eta_report, render_eta_report};
use deltak::simplicial::{
    boundary_module, constant_module, free_standard, point_module, SimplicialMap,
    SimplicialModule,
};

type Check = Result<(), String>;

trait Explain<T> {
    fn or_explain(self, context: &str) -> Result<T, String>;
}

impl<T> Explain<T> for deltak::Result<T> {
    fn or_explain(self, context: &str) -> Result<T, String> {
        self.map_err(|e| format!("{context}: {e}"))
    }
}

fn operator_algebra(field: Field) -> Check {
    for n in 0..=6usize {
        for i in 0..=n {
            let first = d_element(field, i, n).or_explain("building a generator")?;
            let second = d_element(field, i, n + 1).or_explain("building a generator")?;
            let square = first.compose(&second).or_explain("composing generators")?;
            if !square.is_zero() {
                return Err(format!("d[{i},{}] d[{i},{n}] is nonzero", n + 1));
            }
        }
    }
    for source in 0..=5usize {
        for len in 0..=5 - source {
            let sub_maximal: Vec<_> = enumerate_face_words(source, len)
                .into_iter()
                .filter(|w| w.is_sub_maximal())
                .collect();
            let d_words = enumerate_d_words(source, len);
            if sub_maximal.len() != d_words.len() {
                return Err(format!(
                    "{} sub-maximal face words but {} d-words from [{source}] in length {len}",
                    sub_maximal.len(),
                    d_words.len()
                ));
            }
            for w in &sub_maximal {
                let expansion = to_d_basis(field, w).or_explain("expanding a face word")?;
                if from_d_basis(&expansion) != w.to_operator(field) {
                    return Err(format!("round trip fails on {w:?}"));
                }
            }
        }
    }
    Ok(())
}

fn freeness(field: Field) -> Check {
    for source in 0..=5usize {
        for len in 1..=5 - source {
            let prefixes = enumerate_d_words(source + 1, len - 1);
            for w in enumerate_d_words(source, len) {
                let w_op = w.to_operator(field);
                let generator = d_element(field, 0, source).or_explain("building d[0]")?;
                let mut matches = 0;
                for p in &prefixes {
                    let candidate = generator
                        .compose(&p.to_operator(field))
                        .or_explain("composing a candidate factorization")?;
                    if candidate == w_op {
                        matches += 1;
                    }
                }
                let expected = usize::from(w.bottom_index() == Some(0));
                if matches != expected {
                    return Err(format!(
                        "{w} admits {matches} factorizations through d[0,{source}], expected {expected}"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn splitting_projection(field: Field) -> Check {
    for n in 0..=6usize {
        let unit = DMonomial::identity(n);
        if eta(field, &unit, EtaInterpretation::Amended) != OmegaElement::unit(field, n) {
            return Err(format!("the unit at [{n}] is not fixed"));
        }
        let generator = DMonomial::new(
            SigmaWord::new(n, vec![]).expect("empty word"),
            DWord::new(n, vec![0]).expect("single index"),
        )
        .expect("endpoints match");
        if eta(field, &generator, EtaInterpretation::Amended)
            != OmegaElement::d_generator(field, n)
        {
            return Err(format!("the generator at [{n}] is not fixed"));
        }
    }
    println!("{}", render_eta_report(&eta_report(field, 4, 4)));
    Ok(())
}

fn point_resolution_exactness(field: Field) -> Check {
    let length = 5usize;
    for internal in 1..=5usize {
        let r = point_resolution(field, internal, length)
            .or_explain("building the resolution")?;
        r.validate()
            .or_explain(&format!("boundary law at internal degree {internal}"))?;
        let betti = r.betti();
        for (degree, b) in betti.iter().enumerate().take(length).skip(1) {
            if *b != 0 {
                return Err(format!(
                    "homology {b} in resolution degree {degree} at internal degree {internal}"
                ));
            }
        }
        for degree in 1..=length {
            let rows = resolution_basis(degree - 1, internal);
            let cols = resolution_basis(degree, internal);
            let d = r.differential(degree).expect("interior degree");
            for (col, w) in cols.iter().enumerate() {
                let composite = d_element(field, 0, degree - 1)
                    .or_explain("building the raising generator")?
                    .compose(&w.to_operator(field))
                    .or_explain("composing with a basis word")?;
                let expansion =
                    operator_to_d_basis(&composite).or_explain("expanding the composite")?;
                let mut expected = vec![field.zero(); rows.len()];
                for (monomial, c) in &expansion.terms {
                    if !monomial.sigma.is_empty() {
                        return Err(format!("composite of {w} leaves the injective span"));
                    }
                    let row = rows
                        .iter()
                        .position(|x| x == &monomial.d)
                        .ok_or_else(|| format!("{} is not a basis word", monomial.d))?;
                    expected[row] = c.clone();
                }
                for (row, want) in expected.iter().enumerate() {
                    if d.get(row, col) != want {
                        return Err(format!(
                            "differential column for {w} disagrees with the operator expansion"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn normalization_round_trips(field: Field) -> Check {
    for seed in 0..200u64 {
        let mut rng = seeded(1000 + seed);
        let degree = rng.gen_range(1..=5);
        let c = random_chain_complex(field, degree, 6, &mut rng);
        let x = inflate(&c).or_explain("inflating")?;
        let back = moore(&x).or_explain("normalizing the inflation")?;
        if back != c {
            return Err(format!("seed {seed} does not return to its complex"));
        }
    }
    let mut modules: Vec<SimplicialModule> = vec![
        constant_module(field, 4),
        free_standard(field, 1, 4),
        free_standard(field, 2, 4),
        boundary_module(field, 2, 4),
    ];
    for seed in 0..3u64 {
        modules.push(random_full_module(field, 3, 2, &mut seeded(2000 + seed)));
    }
    for (k, x) in modules.iter().enumerate() {
        let e = counit(x).or_explain("building the counit")?;
        e.validate().or_explain("counit naturality")?;
        if !e
            .is_chain_equivalence()
            .or_explain("judging the counit")?
        {
            return Err(format!("counit of module {k} is not an equivalence"));
        }
    }
    Ok(())
}

fn normalized_inclusion(field: Field) -> Check {
    let mut modules: Vec<SimplicialModule> = vec![
        constant_module(field, 4),
        free_standard(field, 1, 4),
        free_standard(field, 2, 4),
        boundary_module(field, 1, 4),
        boundary_module(field, 2, 4),
    ];
    for seed in 0..10u64 {
        modules.push(random_full_module(field, 3, 2, &mut seeded(2500 + seed)));
    }
    for (k, x) in modules.iter().enumerate() {
        let inclusion = moore_inclusion(x).or_explain("building the inclusion")?;
        inclusion
            .validate()
            .or_explain("inclusion chain compatibility")?;
        if !inclusion
            .is_quasi_isomorphism()
            .or_explain("judging the inclusion")?
        {
            return Err(format!(
                "normalized inclusion of module {k} is not a quasi-isomorphism"
            ));
        }
    }
    Ok(())
}

fn homotopy_matches_homology(field: Field) -> Check {
    let mut modules = Vec::new();
    for seed in 0..5u64 {
        modules.push(random_full_module(field, 4, 2, &mut seeded(3000 + seed)));
    }
    for seed in 0..2u64 {
        modules.push(random_full_module(field, 5, 1, &mut seeded(3100 + seed)));
    }
    for (k, x) in modules.iter().enumerate() {
        let pi = x.pi_dims().or_explain("computing homotopy")?;
        let betti = moore(x).or_explain("normalizing")?.betti();
        for n in 0..x.max_degree() {
            if pi[n] != betti[n] {
                return Err(format!(
                    "module {k}: pi_{n} = {} but H_{n} = {}",
                    pi[n], betti[n]
                ));
            }
        }
    }
    for seed in 0..100u64 {
        let f = random_simplicial_map(field, 3, 2, &mut seeded(4000 + seed));
        let by_pi = f.is_pi_equivalence().or_explain("homotopy verdict")?;
        let by_chain = f.is_chain_equivalence().or_explain("chain verdict")?;
        if by_pi != by_chain {
            return Err(format!(
                "seed {seed}: homotopy says {by_pi}, chains say {by_chain}"
            ));
        }
    }
    Ok(())
}

fn point_inclusion(field: Field) -> Check {
    let top = 3usize;
    let point = point_module(field, top);
    let constant = constant_module(field, top);
    let mut components = vec![Matrix::identity(field, 1)];
    for _ in 1..=top {
        components.push(Matrix::zeros(field, 1, 0));
    }
    let inclusion = SimplicialMap::new(point, constant.clone(), components)
        .or_explain("building the inclusion")?;
    inclusion.validate().or_explain("inclusion validity")?;
    if !inclusion
        .is_chain_equivalence()
        .or_explain("judging the inclusion")?
    {
        return Err("the point does not include as an equivalence".into());
    }
    let betti = constant.chain().betti();
    for (degree, b) in betti.iter().enumerate().take(top) {
        let expected = usize::from(degree == 0);
        if *b != expected {
            return Err(format!(
                "constant module has H_{degree} = {b}, expected {expected}"
            ));
        }
    }
    let normalized = moore(&constant).or_explain("normalizing the constant module")?;
    if normalized.betti() != vec![1, 0, 0, 0] {
        return Err("normalized constant homology is not a single class".into());
    }
    Ok(())
}

fn preserves_fiber_order(u: &SetMap, g: &Permutation) -> bool {
    let points = u.values().len();
    for x in 0..points {
        for y in x + 1..points {
            if u.apply(x) == u.apply(y) && g.apply(x) > g.apply(y) {
                return false;
            }
        }
    }
    true
}

fn random_morphism(
    a: usize,
    b: usize,
    family: &dyn GroupFamily,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> CrossedMorphism {
    let labels = family.elements(a);
    let label = labels[rng.gen_range(0..labels.len())].clone();
    let monos = enumerate_hom(a, b);
    let mono = monos[rng.gen_range(0..monos.len())].clone();
    CrossedMorphism::new(label, mono).expect("level counts match")
}

fn set_map_factorization(_field: Field) -> Check {
    let symmetric = lookup("symmetric").expect("registered family");
    for n in 0..=4usize {
        let perms = symmetric.elements(n);
        let inverses: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
        for m in 0..=4usize {
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
                let (mono, perm) = symmetric.factorize(&u).or_explain("stable split")?;
                for x in 0..=n {
                    if mono.apply(perm.apply(x)) != u.apply(x) {
                        return Err(format!("{u} does not recompose"));
                    }
                }
                if !preserves_fiber_order(&u, &perm) {
                    return Err(format!("{u} is split without preserving fiber order"));
                }
                let mut count = 0;
                for (g, g_inv) in perms.iter().zip(&inverses) {
                    let composed: Vec<usize> =
                        (0..=n).map(|j| u.apply(g_inv.apply(j))).collect();
                    let monotone = composed.windows(2).all(|w| w[0] <= w[1]);
                    if monotone && preserves_fiber_order(&u, g) {
                        count += 1;
                    }
                }
                if count != 1 {
                    return Err(format!(
                        "{u} admits {count} order-preserving factorizations"
                    ));
                }
            }
        }
    }
    for name in ["symmetric", "cyclic"] {
        let family = lookup(name).expect("registered family");
        let mut rng = seeded(5000);
        for round in 0..200 {
            let levels: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=4)).collect();
            let a = random_morphism(levels[0], levels[1], family.as_ref(), &mut rng);
            let b = random_morphism(levels[1], levels[2], family.as_ref(), &mut rng);
            let c = random_morphism(levels[2], levels[3], family.as_ref(), &mut rng);
            let ab = crossed_compose(&a, &b, family.as_ref())
                .or_explain(&format!("{name} round {round}, left pair"))?;
            let bc = crossed_compose(&b, &c, family.as_ref())
                .or_explain(&format!("{name} round {round}, right pair"))?;
            let left = crossed_compose(&ab, &c, family.as_ref())
                .or_explain(&format!("{name} round {round}, left association"))?;
            let right = crossed_compose(&a, &bc, family.as_ref())
                .or_explain(&format!("{name} round {round}, right association"))?;
            if left != right {
                return Err(format!("{name} round {round}: association disagrees"));
            }
            let direct = a
                .realize()
                .then(&b.realize())
                .or_explain("composing realizations")?;
            if ab.realize() != direct {
                return Err(format!(
                    "{name} round {round}: composite realizes incorrectly"
                ));
            }
        }
    }
    Ok(())
}

fn crossed_invariants(field: Field) -> Check {
    for name in ["cyclic", "symmetric"] {
        let rep = representable_crossed(field, name, 3)
            .or_explain("building the representable module")?;
        rep.validate()
            .or_explain(&format!("{name} representable validity"))?;
        if rep.invariant_dims() != vec![1, 1, 1, 1] {
            return Err(format!(
                "{name} representable invariants are {:?}",
                rep.invariant_dims()
            ));
        }
    }
    for seed in 0..3u64 {
        let x = random_full_module(field, 3, 2, &mut seeded(6000 + seed));
        for name in ["cyclic", "symmetric"] {
            let trivial =
                CrossedModule::trivial_action(&x, name).or_explain("attaching trivial actions")?;
            let back = trivial.invariants().or_explain("taking invariants")?;
            if back != x {
                return Err(format!(
                    "invariants of a trivial {name} action changed the module at seed {seed}"
                ));
            }
        }
    }
    for name in ["cyclic", "symmetric"] {
        let module = CrossedModule::trivial_action(&constant_module(field, 3), name)
            .or_explain("attaching trivial actions")?;
        module
            .validate()
            .or_explain(&format!("trivial {name} action on the constant module"))?;
        let identity = CrossedMap::identity(&module);
        identity.validate().or_explain("identity equivariance")?;
        if !identity
            .is_equivariant_weak_equivalence()
            .or_explain("judging the identity")?
        {
            return Err(format!("{name}: the identity is not an equivalence"));
        }
        let zero = CrossedMap::zero(&module, &module).or_explain("building the zero map")?;
        zero.validate().or_explain("zero equivariance")?;
        if zero
            .is_equivariant_weak_equivalence()
            .or_explain("judging the zero map")?
        {
            return Err(format!("{name}: the zero map passes as an equivalence"));
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn(Field) -> Check);

fn criteria() -> Vec<Criterion> {
    vec![
        ("face operator algebra", operator_algebra),
        ("freeness over the raising generator", freeness),
        ("splitting projection", splitting_projection),
        ("point resolution exactness", point_resolution_exactness),
        ("normalization round trips", normalization_round_trips),
        ("normalized inclusion", normalized_inclusion),
        ("homotopy matches homology", homotopy_matches_homology),
        ("point inclusion", point_inclusion),
        ("set map factorization", set_map_factorization),
        ("crossed invariants", crossed_invariants),
    ]
}

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for (idx, (label, check)) in criteria().iter().enumerate() {
        let start = Instant::now();
        match check(Field::Rational) {
            Ok(()) => println!(
                "criterion {}: PASS {label} ({:.2}s)",
                idx + 1,
                start.elapsed().as_secs_f64()
            ),
            Err(detail) => {
                println!("criterion {}: FAIL {label} ({detail})", idx + 1);
                failures.push(format!("criterion {} ({label}): {detail}", idx + 1));
            }
        }
    }
    let start = Instant::now();
    let mut prime_failures = Vec::new();
    for (label, check) in criteria() {
        if let Err(detail) = check(Field::Prime(5)) {
            prime_failures.push(format!("{label} over p:5: {detail}"));
        }
    }
    if prime_failures.is_empty() {
        println!(
            "criterion 11: PASS all criteria repeated over p:5 ({:.2}s)",
            start.elapsed().as_secs_f64()
        );
    } else {
        println!("criterion 11: FAIL {}", prime_failures.join("; "));
        failures.extend(prime_failures);
    }
    assert!(failures.is_empty(), "\n{}", failures.join("\n"));
}
