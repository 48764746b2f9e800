//! The categorical algebra of the simplex category: formal linear
//! combinations of arrows, generator words, and the change of basis into
//! partial alternating face sums.
//!
//! A `FaceWord` is a normal-form word of cofaces, a `SigmaWord` a
//! normal-form word of codegeneracies, and a `DWord` a word in the operators
//! `d_{i,n} = sum_{j=i..n} (-1)^j face_j`. Words store one index per level,
//! top level first, with strictly decreasing indices. The span of the
//! `d`-monomials is the subalgebra of arrows whose injective part preserves
//! the top element; `to_d_basis` rejects words outside it, since no correct
//! expansion exists there.

use std::collections::BTreeMap;

use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

fn check_word(indices: &[usize], levels: impl Iterator<Item = usize>, slack: usize) -> Result<()> {
    for pair in indices.windows(2) {
        if pair[0] <= pair[1] {
            return Err(Error::MalformedWord(format!(
                "indices {indices:?} are not strictly decreasing"
            )));
        }
    }
    for (k, level) in levels.enumerate() {
        if indices[k] > level + slack {
            return Err(Error::MalformedWord(format!(
                "index {} exceeds its level-{} bound",
                indices[k], level
            )));
        }
    }
    Ok(())
}

/// A coface word `[source] -> [source + len]`. Entry `k` is the coface
/// index at level `source + len - 1 - k`, so the word reads top down and
/// composes bottom up.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceWord {
    source: usize,
    indices: Vec<usize>,
}

impl FaceWord {
    pub fn new(source: usize, indices: Vec<usize>) -> Result<FaceWord> {
        let top = source + indices.len();
        check_word(&indices, (0..indices.len()).map(|k| top - 1 - k), 1)?;
        Ok(FaceWord { source, indices })
    }

    pub fn empty(n: usize) -> FaceWord {
        FaceWord {
            source: n,
            indices: Vec::new(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.source + self.indices.len()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn level(&self, k: usize) -> usize {
        self.target() - 1 - k
    }

    /// True when every index is at most its level, i.e. the word stays in
    /// the span of the `d`-monomials.
    pub fn is_sub_maximal(&self) -> bool {
        self.indices.first().is_none_or(|&i| i < self.target())
    }

    /// The injective monotone map this word composes to.
    pub fn to_monotone(&self) -> MonotoneMap {
        let mut f = MonotoneMap::identity(self.source);
        for (k, &i) in self.indices.iter().rev().enumerate() {
            f = f
                .compose(&MonotoneMap::coface(i, self.source + k))
                .expect("face word levels are consecutive");
        }
        f
    }

    /// Reads the word off an injective map: its missed values, descending.
    pub fn from_monotone(f: &MonotoneMap) -> Result<FaceWord> {
        if !f.is_injective() {
            return Err(Error::MalformedWord(format!("{f} is not injective")));
        }
        let (_, faces) = f.epi_mono_factorize();
        FaceWord::new(f.source(), faces)
    }

    pub fn to_operator(&self, field: Field) -> Operator {
        Operator::from_map(field, self.to_monotone())
    }
}

/// A codegeneracy word `[source] -> [source - len]`. Entry `k` is the
/// index at level `source - 1 - k`; storage order is application order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SigmaWord {
    source: usize,
    indices: Vec<usize>,
}

impl SigmaWord {
    pub fn new(source: usize, indices: Vec<usize>) -> Result<SigmaWord> {
        if indices.len() > source {
            return Err(Error::MalformedWord(format!(
                "{} codegeneracies cannot start at [{}]",
                indices.len(),
                source
            )));
        }
        check_word(&indices, (0..indices.len()).map(|k| source - 1 - k), 0)?;
        Ok(SigmaWord { source, indices })
    }

    pub fn empty(n: usize) -> SigmaWord {
        SigmaWord {
            source: n,
            indices: Vec::new(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.source - self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn to_monotone(&self) -> MonotoneMap {
        let mut f = MonotoneMap::identity(self.source);
        for (k, &i) in self.indices.iter().enumerate() {
            f = f
                .compose(&MonotoneMap::codegeneracy(i, self.source - 1 - k))
                .expect("sigma word levels are consecutive");
        }
        f
    }

    /// Reads the word off a surjective map: its collapsed positions,
    /// descending.
    pub fn from_monotone(f: &MonotoneMap) -> Result<SigmaWord> {
        if !f.is_surjective() {
            return Err(Error::MalformedWord(format!("{f} is not surjective")));
        }
        let (degens, _) = f.epi_mono_factorize();
        SigmaWord::new(f.source(), degens)
    }

    pub fn to_operator(&self, field: Field) -> Operator {
        Operator::from_map(field, self.to_monotone())
    }
}

/// A word in the partial alternating sums, `[source] -> [source + len]`,
/// same storage scheme as [`FaceWord`] but with the tighter index bound
/// `i <= level`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DWord {
    source: usize,
    indices: Vec<usize>,
}

impl DWord {
    pub fn new(source: usize, indices: Vec<usize>) -> Result<DWord> {
        let top = source + indices.len();
        check_word(&indices, (0..indices.len()).map(|k| top - 1 - k), 0)?;
        Ok(DWord { source, indices })
    }

    pub fn empty(n: usize) -> DWord {
        DWord {
            source: n,
            indices: Vec::new(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.source + self.indices.len()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn level(&self, k: usize) -> usize {
        self.target() - 1 - k
    }

    /// The index at the bottom level, if any.
    pub fn bottom_index(&self) -> Option<usize> {
        self.indices.last().copied()
    }

    pub fn to_operator(&self, field: Field) -> Operator {
        let mut op = Operator::identity(field, self.source);
        for (k, &i) in self.indices.iter().rev().enumerate() {
            let d = d_element(field, i, self.source + k).expect("valid d generator");
            op = op.compose(&d).expect("d word levels are consecutive");
        }
        op
    }
}

impl std::fmt::Display for DWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "1_{}", self.source);
        }
        for (k, &i) in self.indices.iter().enumerate() {
            write!(f, "d[{},{}]", i, self.level(k))?;
        }
        Ok(())
    }
}

/// A formal linear combination of parallel arrows of the simplex category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operator {
    field: Field,
    source: usize,
    target: usize,
    terms: BTreeMap<MonotoneMap, Scalar>,
}

impl Operator {
    pub fn zero(field: Field, source: usize, target: usize) -> Operator {
        Operator {
            field,
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_map(field: Field, f: MonotoneMap) -> Operator {
        let mut op = Operator::zero(field, f.source(), f.target());
        op.terms.insert(f, field.one());
        op
    }

    pub fn identity(field: Field, n: usize) -> Operator {
        Operator::from_map(field, MonotoneMap::identity(n))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> &BTreeMap<MonotoneMap, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        self.check_parallel(other)?;
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.accumulate(f.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        self.check_parallel(other)?;
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.accumulate(f.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Operator {
        let mut out = Operator::zero(self.field, self.source, self.target);
        for (f, v) in &self.terms {
            out.accumulate(f.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn accumulate(&mut self, f: MonotoneMap, c: Scalar) {
        assert_eq!(f.source(), self.source, "term source mismatch");
        assert_eq!(f.target(), self.target, "term target mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(f.clone()).or_insert_with(|| self.field.zero());
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&f);
        }
    }

    fn check_parallel(&self, other: &Operator) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.descriptor(),
                other.field.descriptor(),
            ));
        }
        if self.source != other.source || self.target != other.target {
            return Err(Error::Composability(format!(
                "[{}]->[{}] is not parallel to [{}]->[{}]",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    /// Diagrammatic composite: `self` then `other`.
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.descriptor(),
                other.field.descriptor(),
            ));
        }
        if self.target != other.source {
            return Err(Error::Composability(format!(
                "[{}]->[{}] then [{}]->[{}]",
                self.source, self.target, other.source, other.target
            )));
        }
        let mut out = Operator::zero(self.field, self.source, other.target);
        for (f, c) in &self.terms {
            for (g, d) in &other.terms {
                out.accumulate(f.compose(g)?, c.clone() * d.clone());
            }
        }
        Ok(out)
    }
}

/// The operator `d_{i,n} = sum_{j=i..n} (-1)^j face_j : [n] -> [n+1]`.
pub fn d_element(field: Field, i: usize, n: usize) -> Result<Operator> {
    if i > n {
        return Err(Error::DegreeOutOfRange { degree: i, max: n });
    }
    let mut op = Operator::zero(field, n, n + 1);
    for j in i..=n {
        let sign = if j % 2 == 0 {
            field.one()
        } else {
            -field.one()
        };
        op.accumulate(MonotoneMap::coface(j, n), sign);
    }
    Ok(op)
}

/// A linear combination of `DWord`s sharing source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DExpansion {
    pub field: Field,
    pub source: usize,
    pub target: usize,
    pub terms: BTreeMap<DWord, Scalar>,
}

impl DExpansion {
    pub fn to_operator(&self) -> Operator {
        let mut op = Operator::zero(self.field, self.source, self.target);
        for (w, c) in &self.terms {
            op = op.add(&w.to_operator(self.field).scale(c)).expect("parallel terms");
        }
        op
    }
}

/// Rewrites a sub-maximal face word in the `d`-basis.
///
/// Walks the word top down, keeping a normal partial `d`-word per term.
/// Each face `face_i` at level `l` expands to `(-1)^i (d_{i,l} - d_{i+1,l})`;
/// the first summand always extends normally, the second is dropped when it
/// collides with the relation `d_{i,l+1} d_{i,l} = 0` or when `i = l` makes
/// it the empty sum.
pub fn to_d_basis(field: Field, w: &FaceWord) -> Result<DExpansion> {
    if !w.is_sub_maximal() {
        return Err(Error::MalformedWord(format!(
            "face word with top index {} at level {} lies outside the d-span",
            w.indices()[0],
            w.level(0)
        )));
    }
    let mut state: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    state.insert(Vec::new(), field.one());
    for (k, &i) in w.indices().iter().enumerate() {
        let level = w.level(k);
        let sign = if i % 2 == 0 {
            field.one()
        } else {
            -field.one()
        };
        let mut next: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        let mut push = |indices: Vec<usize>, c: Scalar| {
            let slot = next.entry(indices.clone()).or_insert_with(|| field.zero());
            *slot = slot.clone() + c;
            if slot.is_zero() {
                next.remove(&indices);
            }
        };
        for (prefix, c) in &state {
            let mut a = prefix.clone();
            a.push(i);
            push(a, c.clone() * sign.clone());
            let blocked = prefix.last() == Some(&(i + 1));
            if i < level && !blocked {
                let mut b = prefix.clone();
                b.push(i + 1);
                push(b, -(c.clone() * sign.clone()));
            }
        }
        state = next;
    }
    let mut terms = BTreeMap::new();
    for (indices, c) in state {
        let word = DWord::new(w.source(), indices)?;
        terms.insert(word, c);
    }
    Ok(DExpansion {
        field,
        source: w.source(),
        target: w.target(),
        terms,
    })
}

/// Expands a `d`-basis combination back into a combination of arrows.
pub fn from_d_basis(e: &DExpansion) -> Operator {
    e.to_operator()
}

/// A basis monomial of the `d`-span: codegeneracies first, then a `d`-word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DMonomial {
    pub sigma: SigmaWord,
    pub d: DWord,
}

impl DMonomial {
    pub fn new(sigma: SigmaWord, d: DWord) -> Result<DMonomial> {
        if sigma.target() != d.source() {
            return Err(Error::Composability(format!(
                "sigma word ends at [{}], d word starts at [{}]",
                sigma.target(),
                d.source()
            )));
        }
        Ok(DMonomial { sigma, d })
    }

    pub fn identity(n: usize) -> DMonomial {
        DMonomial {
            sigma: SigmaWord::empty(n),
            d: DWord::empty(n),
        }
    }

    pub fn source(&self) -> usize {
        self.sigma.source()
    }

    pub fn target(&self) -> usize {
        self.d.target()
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.is_empty() && self.d.is_empty()
    }

    pub fn to_operator(&self, field: Field) -> Operator {
        self.sigma
            .to_operator(field)
            .compose(&self.d.to_operator(field))
            .expect("monomial parts are composable")
    }
}

impl std::fmt::Display for DMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_identity() {
            return write!(f, "1_{}", self.source());
        }
        for (k, &i) in self.sigma.indices().iter().enumerate() {
            write!(f, "s[{},{}]", i, self.sigma.source() - 1 - k)?;
        }
        if !self.d.is_empty() {
            write!(f, "{}", self.d)?;
        }
        Ok(())
    }
}

/// A linear combination of `d`-basis monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialExpansion {
    pub field: Field,
    pub source: usize,
    pub target: usize,
    pub terms: BTreeMap<DMonomial, Scalar>,
}

impl MonomialExpansion {
    pub fn to_operator(&self) -> Operator {
        let mut op = Operator::zero(self.field, self.source, self.target);
        for (m, c) in &self.terms {
            op = op
                .add(&m.to_operator(self.field).scale(c))
                .expect("parallel terms");
        }
        op
    }
}

/// Rewrites an operator in the `d`-monomial basis.
///
/// Fails when some term's injective part does not preserve the top element;
/// such arrows lie outside the span of the `d`-monomials.
pub fn operator_to_d_basis(op: &Operator) -> Result<MonomialExpansion> {
    let mut terms: BTreeMap<DMonomial, Scalar> = BTreeMap::new();
    for (f, c) in op.terms() {
        let (degens, faces) = f.epi_mono_factorize();
        let mid = f.source() - degens.len();
        let sigma = SigmaWord::new(f.source(), degens)?;
        let face_word = FaceWord::new(mid, faces)?;
        let expansion = to_d_basis(op.field(), &face_word)?;
        for (dword, s) in expansion.terms {
            let m = DMonomial::new(sigma.clone(), dword)?;
            let slot = terms.entry(m.clone()).or_insert_with(|| op.field().zero());
            *slot = slot.clone() + c.clone() * s;
            if slot.is_zero() {
                terms.remove(&m);
            }
        }
    }
    Ok(MonomialExpansion {
        field: op.field(),
        source: op.source(),
        target: op.target(),
        terms,
    })
}

/// An element of the subalgebra generated by the full alternating sums:
/// coefficients on the local units `1_n` and on the generators `d_{0,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OmegaElement {
    pub units: BTreeMap<usize, Scalar>,
    pub ds: BTreeMap<usize, Scalar>,
}

impl OmegaElement {
    pub fn zero() -> OmegaElement {
        OmegaElement::default()
    }

    pub fn unit(field: Field, n: usize) -> OmegaElement {
        let mut e = OmegaElement::zero();
        e.units.insert(n, field.one());
        e
    }

    pub fn d_generator(field: Field, n: usize) -> OmegaElement {
        let mut e = OmegaElement::zero();
        e.ds.insert(n, field.one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.units.is_empty() && self.ds.is_empty()
    }

    fn insert_unit(&mut self, n: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.units.entry(n).or_insert_with(|| c.field().zero());
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.units.remove(&n);
        }
    }

    fn insert_d(&mut self, n: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.ds.entry(n).or_insert_with(|| c.field().zero());
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.ds.remove(&n);
        }
    }

    pub fn add(&self, other: &OmegaElement) -> OmegaElement {
        let mut out = self.clone();
        for (&n, c) in &other.units {
            out.insert_unit(n, c.clone());
        }
        for (&n, c) in &other.ds {
            out.insert_d(n, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> OmegaElement {
        let mut out = OmegaElement::zero();
        for (&n, v) in &self.units {
            out.insert_unit(n, v.clone() * c.clone());
        }
        for (&n, v) in &self.ds {
            out.insert_d(n, v.clone() * c.clone());
        }
        out
    }

    /// Product in the category algebra, diagrammatic order. Non-composable
    /// endpoint pairs multiply to zero, as do the squares
    /// `d_{0,n} d_{0,n+1}` by the defining relation.
    pub fn mul(&self, other: &OmegaElement) -> OmegaElement {
        let mut out = OmegaElement::zero();
        for (&a, c) in &self.units {
            if let Some(d) = other.units.get(&a) {
                out.insert_unit(a, c.clone() * d.clone());
            }
            if let Some(d) = other.ds.get(&a) {
                out.insert_d(a, c.clone() * d.clone());
            }
        }
        for (&a, c) in &self.ds {
            // d_{0,a}: [a] -> [a+1]; a following unit must live at [a+1].
            if let Some(d) = other.units.get(&(a + 1)) {
                out.insert_d(a, c.clone() * d.clone());
            }
            // d_{0,a} then d_{0,a+1} is zero; nothing to add.
        }
        out
    }
}

impl std::fmt::Display for OmegaElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in &self.units {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*1_{n}")?;
            first = false;
        }
        for (n, c) in &self.ds {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*d[0,{n}]")?;
            first = false;
        }
        Ok(())
    }
}

/// The two readings of the projection onto the alternating-sum subalgebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaInterpretation {
    /// The printed condition, which demands at least one codegeneracy
    /// factor before a bare `d_{0,n}` maps anywhere nonzero.
    Literal,
    /// The reading under which the inclusion splits: a bare `d_{0,n}` maps
    /// to `d_{0,n}`.
    Amended,
}

/// The projection on a single basis monomial. Both readings are unital.
pub fn eta(field: Field, m: &DMonomial, interpretation: EtaInterpretation) -> OmegaElement {
    if m.is_identity() {
        return OmegaElement::unit(field, m.source());
    }
    let single_d0 = m.d.len() == 1 && m.d.bottom_index() == Some(0);
    if !single_d0 {
        return OmegaElement::zero();
    }
    let keep = match interpretation {
        EtaInterpretation::Literal => !m.sigma.is_empty(),
        EtaInterpretation::Amended => m.sigma.is_empty(),
    };
    if keep {
        OmegaElement::d_generator(field, m.d.source())
    } else {
        OmegaElement::zero()
    }
}

/// The projection extended linearly over a whole operator.
pub fn eta_operator(op: &Operator, interpretation: EtaInterpretation) -> Result<OmegaElement> {
    let expansion = operator_to_d_basis(op)?;
    let mut out = OmegaElement::zero();
    for (m, c) in &expansion.terms {
        out = out.add(&eta(op.field(), m, interpretation).scale(c));
    }
    Ok(out)
}

fn decreasing_words(len: usize, bounds: &[usize]) -> Vec<Vec<usize>> {
    fn rec(k: usize, len: usize, bounds: &[usize], prev: Option<usize>, acc: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
        if k == len {
            acc.push(cur.clone());
            return;
        }
        let hi = match prev {
            Some(p) => bounds[k].min(p.saturating_sub(1)),
            None => bounds[k],
        };
        if prev == Some(0) {
            return;
        }
        for i in (0..=hi).rev() {
            cur.push(i);
            rec(k + 1, len, bounds, Some(i), acc, cur);
            cur.pop();
        }
    }
    let mut acc = Vec::new();
    let mut cur = Vec::new();
    rec(0, len, bounds, None, &mut acc, &mut cur);
    acc
}

/// All normal face words `[source] -> [source + len]`, including those with
/// a maximal top index.
pub fn enumerate_face_words(source: usize, len: usize) -> Vec<FaceWord> {
    let top = source + len;
    let bounds: Vec<usize> = (0..len).map(|k| top - k).collect();
    decreasing_words(len, &bounds)
        .into_iter()
        .map(|indices| FaceWord { source, indices })
        .collect()
}

/// All normal `d`-words `[source] -> [source + len]`.
pub fn enumerate_d_words(source: usize, len: usize) -> Vec<DWord> {
    let top = source + len;
    let bounds: Vec<usize> = (0..len).map(|k| top - 1 - k).collect();
    decreasing_words(len, &bounds)
        .into_iter()
        .map(|indices| DWord { source, indices })
        .collect()
}

/// All normal codegeneracy words `[source] -> [source - len]`.
pub fn enumerate_sigma_words(source: usize, len: usize) -> Vec<SigmaWord> {
    if len > source {
        return Vec::new();
    }
    let bounds: Vec<usize> = (0..len).map(|k| source - 1 - k).collect();
    decreasing_words(len, &bounds)
        .into_iter()
        .map(|indices| SigmaWord { source, indices })
        .collect()
}

/// All `d`-basis monomials `[a] -> [b]`, grouped over the middle object.
pub fn enumerate_d_monomials(a: usize, b: usize) -> Vec<DMonomial> {
    let mut out = Vec::new();
    for t in 0..=a.min(b) {
        for sigma in enumerate_sigma_words(a, a - t) {
            for d in enumerate_d_words(t, b - t) {
                out.push(DMonomial {
                    sigma: sigma.clone(),
                    d,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn d_element_examples() {
        let d12 = d_element(q(), 1, 2).unwrap();
        let mut expected = Operator::zero(q(), 2, 3);
        expected.accumulate(MonotoneMap::coface(1, 2), -q().one());
        expected.accumulate(MonotoneMap::coface(2, 2), q().one());
        assert_eq!(d12, expected);

        let d00 = d_element(q(), 0, 0).unwrap();
        assert_eq!(d00, Operator::from_map(q(), MonotoneMap::coface(0, 0)));

        let d22 = d_element(q(), 2, 2).unwrap();
        assert_eq!(d22, Operator::from_map(q(), MonotoneMap::coface(2, 2)));

        assert!(d_element(q(), 3, 2).is_err());
    }

    #[test]
    fn d_squares_vanish() {
        for n in 0..=6 {
            for i in 0..=n {
                let lower = d_element(q(), i, n).unwrap();
                let upper = d_element(q(), i, n + 1).unwrap();
                assert!(lower.compose(&upper).unwrap().is_zero(), "d[{i},{}]d[{i},{n}]", n + 1);
            }
        }
    }

    #[test]
    fn single_face_expansion() {
        // face_i at level n becomes (-1)^i (d_{i,n} - d_{i+1,n}).
        let w = FaceWord::new(1, vec![1]).unwrap();
        let e = to_d_basis(q(), &w).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[&DWord::new(1, vec![1]).unwrap()], -q().one());

        let w = FaceWord::new(2, vec![1]).unwrap();
        let e = to_d_basis(q(), &w).unwrap();
        assert_eq!(e.terms[&DWord::new(2, vec![1]).unwrap()], -q().one());
        assert_eq!(e.terms[&DWord::new(2, vec![2]).unwrap()], q().one());
    }

    #[test]
    fn two_face_expansion_matches_worked_example() {
        // face_2 at level 2 after face_0 at level 1.
        let w = FaceWord::new(1, vec![2, 0]).unwrap();
        let e = to_d_basis(q(), &w).unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[&DWord::new(1, vec![2, 0]).unwrap()], q().one());
        assert_eq!(e.terms[&DWord::new(1, vec![2, 1]).unwrap()], -q().one());
    }

    #[test]
    fn empty_word_is_identity() {
        let w = FaceWord::empty(3);
        let e = to_d_basis(q(), &w).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[&DWord::empty(3)], q().one());
        assert_eq!(from_d_basis(&e), Operator::identity(q(), 3));
    }

    #[test]
    fn maximal_words_are_rejected() {
        let w = FaceWord::new(0, vec![1]).unwrap();
        assert!(to_d_basis(q(), &w).is_err());
        let w = FaceWord::new(1, vec![3, 1]).unwrap();
        assert!(to_d_basis(q(), &w).is_err());
    }

    #[test]
    fn from_d_basis_examples() {
        let e = DExpansion {
            field: q(),
            source: 1,
            target: 2,
            terms: BTreeMap::from([(DWord::new(1, vec![1]).unwrap(), q().one())]),
        };
        let mut expected = Operator::zero(q(), 1, 2);
        expected.accumulate(MonotoneMap::coface(1, 1), -q().one());
        assert_eq!(from_d_basis(&e), expected);

        let e = DExpansion {
            field: q(),
            source: 1,
            target: 2,
            terms: BTreeMap::from([(DWord::new(1, vec![0]).unwrap(), q().one())]),
        };
        let mut expected = Operator::zero(q(), 1, 2);
        expected.accumulate(MonotoneMap::coface(0, 1), q().one());
        expected.accumulate(MonotoneMap::coface(1, 1), -q().one());
        assert_eq!(from_d_basis(&e), expected);
    }

    #[test]
    fn round_trip_through_the_d_basis() {
        for source in 0..=3 {
            for len in 0..=3 {
                for w in enumerate_face_words(source, len) {
                    if !w.is_sub_maximal() {
                        continue;
                    }
                    let e = to_d_basis(q(), &w).unwrap();
                    assert_eq!(from_d_basis(&e), w.to_operator(q()), "word {w:?}");
                }
            }
        }
    }

    #[test]
    fn counting_bijection_small() {
        for source in 0..=4 {
            for len in 0..=4 {
                let sub_maximal = enumerate_face_words(source, len)
                    .into_iter()
                    .filter(FaceWord::is_sub_maximal)
                    .count();
                assert_eq!(sub_maximal, enumerate_d_words(source, len).len());
            }
        }
    }

    #[test]
    fn operator_normalization_round_trips() {
        for (a, b) in [(0, 0), (1, 1), (2, 1), (1, 2), (2, 3)] {
            for m in enumerate_d_monomials(a, b) {
                let op = m.to_operator(q());
                let e = operator_to_d_basis(&op).unwrap();
                assert_eq!(e.terms.len(), 1, "monomial {m} should normalize to itself");
                assert_eq!(e.terms[&m], q().one());
                assert_eq!(e.to_operator(), op);
            }
        }
    }

    #[test]
    fn eta_examples() {
        let m = DMonomial::new(SigmaWord::empty(2), DWord::new(2, vec![0]).unwrap()).unwrap();
        assert_eq!(
            eta(q(), &m, EtaInterpretation::Amended),
            OmegaElement::d_generator(q(), 2)
        );
        assert_eq!(eta(q(), &m, EtaInterpretation::Literal), OmegaElement::zero());

        let id = DMonomial::identity(3);
        assert_eq!(eta(q(), &id, EtaInterpretation::Amended), OmegaElement::unit(q(), 3));
        assert_eq!(eta(q(), &id, EtaInterpretation::Literal), OmegaElement::unit(q(), 3));

        // face_1 at level 2 expands into index >= 1 generators only.
        let op = Operator::from_map(q(), MonotoneMap::coface(1, 2));
        assert!(eta_operator(&op, EtaInterpretation::Amended).unwrap().is_zero());
    }

    #[test]
    fn omega_products() {
        let one1 = OmegaElement::unit(q(), 1);
        let d1 = OmegaElement::d_generator(q(), 1);
        let d2 = OmegaElement::d_generator(q(), 2);
        assert_eq!(one1.mul(&one1), one1);
        assert_eq!(one1.mul(&d1), d1);
        // d_{0,1}: [1] -> [2] followed by the unit at [2].
        assert_eq!(d1.mul(&OmegaElement::unit(q(), 2)), d1);
        // Composable squares die by the relation.
        assert!(d1.mul(&d2).is_zero());
        // Non-composable endpoint pairs multiply to zero.
        assert!(d1.mul(&one1).is_zero());
        assert!(d2.mul(&d1).is_zero());
    }
}
