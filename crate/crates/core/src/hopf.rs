//! Hopf algebras presented by grouplike and skew-primitive generators.
//!
//! An algebra here is given by an ordered list of generators, each either
//! grouplike (invertible, with Delta(g) = g (x) g) or skew-primitive, plus a
//! swap rule for every out-of-order generator pair. Elements are kept in a
//! normal form where generator indices ascend left to right, so the listed
//! generator order is the PBW order. Coproducts and antipodes of
//! skew-primitive generators are part of the presentation; the grouplike
//! ones are implied by their class.
//!
//! Rewriting with a `Commute` rule moves whole powers past each other in one
//! step; a `General` rule (such as a commutator rule linking raising and
//! lowering generators through grouplikes) is peeled one unit at a time.
//! Termination follows from the usual measure: each applied rule either
//! lowers the number of skew-primitive letters or keeps it and lowers the
//! inversion count.

use crate::error::Error;
use crate::scalar::{render_terms, Field, Scalar};
use crate::Result;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// How a generator behaves under the coalgebra structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenClass {
    /// Invertible, Delta(g) = g (x) g. `order` 0 means infinite order;
    /// otherwise g^order = 1.
    Grouplike { order: u32 },
    /// Not invertible. `nil` 0 means no power vanishes; otherwise x^nil = 0.
    SkewPrimitive { nil: u32 },
}

impl GenClass {
    pub fn is_grouplike(&self) -> bool {
        matches!(self, GenClass::Grouplike { .. })
    }
}

/// A word as raw data: (generator index, exponent) pairs, not necessarily
/// normalized.
pub type RawWord = Vec<(u8, i64)>;

#[derive(Debug, Clone, PartialEq)]
pub struct HopfGen {
    pub name: String,
    pub class: GenClass,
}

/// Rewrite rule for g_hi . g_lo with hi > lo in the generator order.
#[derive(Debug, Clone, PartialEq)]
pub enum SwapRule {
    /// g_hi . g_lo = s * g_lo . g_hi; powers move in bulk with scalar
    /// s^(e_hi * e_lo).
    Commute(Scalar),
    /// g_hi . g_lo = sum of the listed terms; applied to unit exponents only.
    General(Vec<(Scalar, RawWord)>),
}

/// The raw description of a Hopf algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfPresentation {
    pub name: String,
    pub field: Field,
    pub gens: Vec<HopfGen>,
    /// Keyed by (hi, lo) with hi > lo; every such pair must appear.
    pub swaps: BTreeMap<(u8, u8), SwapRule>,
    /// Coproduct of each skew-primitive generator as a sum of
    /// (coefficient, left word, right word) terms.
    pub skew_delta: BTreeMap<u8, Vec<(Scalar, RawWord, RawWord)>>,
    /// Antipode of each skew-primitive generator.
    pub skew_antipode: BTreeMap<u8, Vec<(Scalar, RawWord)>>,
    /// For finite dimensional algebras, the full normal-word basis.
    pub finite_basis: Option<Vec<RawWord>>,
}

#[derive(Debug, PartialEq)]
struct HopfData {
    p: HopfPresentation,
}

/// A Hopf algebra handle; cheap to clone.
#[derive(Clone)]
pub struct Hopf(Arc<HopfData>);

impl PartialEq for Hopf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Hopf {}

impl fmt::Debug for Hopf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hopf[{}]", self.name())
    }
}

/// A normalized word: strictly ascending generator indices, class-reduced
/// exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HWord(pub Vec<(u8, i64)>);

impl HWord {
    pub fn one() -> HWord {
        HWord(vec![])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[(u8, i64)] {
        &self.0
    }
}

fn validate_raw(word: &RawWord, num_gens: usize) -> Result<()> {
    for &(g, _) in word {
        if usize::from(g) >= num_gens {
            return Err(Error::Presentation(format!(
                "word references generator index {g} out of range"
            )));
        }
    }
    Ok(())
}

impl Hopf {
    pub fn new(p: HopfPresentation) -> Result<Hopf> {
        let n = p.gens.len();
        if n == 0 || n > 60 {
            return Err(Error::Presentation(
                "a Hopf presentation needs between 1 and 60 generators".into(),
            ));
        }
        for (i, g) in p.gens.iter().enumerate() {
            let name = &g.name;
            if name.is_empty()
                || !name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '\'' || c == '_')
                || !name.chars().next().unwrap().is_ascii_alphabetic()
            {
                return Err(Error::Presentation(format!("bad generator name {name:?}")));
            }
            if p.gens[..i].iter().any(|h| h.name == *name) {
                return Err(Error::Presentation(format!("duplicate generator {name:?}")));
            }
        }
        for hi in 0..n as u8 {
            for lo in 0..hi {
                if !p.swaps.contains_key(&(hi, lo)) {
                    return Err(Error::Presentation(format!(
                        "no swap rule for {}.{}",
                        p.gens[hi as usize].name, p.gens[lo as usize].name
                    )));
                }
            }
        }
        for (&(hi, lo), rule) in &p.swaps {
            if usize::from(hi) >= n || lo >= hi {
                return Err(Error::Presentation(format!(
                    "swap key ({hi}, {lo}) is not a descending in-range pair"
                )));
            }
            match rule {
                SwapRule::Commute(s) => {
                    if s.field() != &p.field {
                        return Err(Error::FieldMismatch(
                            p.field.describe(),
                            s.field().describe(),
                        ));
                    }
                    if s.is_zero() {
                        return Err(Error::Presentation(
                            "a commutation scalar must be nonzero".into(),
                        ));
                    }
                    // Consistency with g^m = 1: moving a full power of a
                    // finite-order grouplike must be the identity.
                    for side in [hi, lo] {
                        if let GenClass::Grouplike { order: m @ 1.. } = p.gens[side as usize].class
                        {
                            if !s.pow(i64::from(m))?.is_one() {
                                return Err(Error::Presentation(format!(
                                    "commutation scalar for {}.{} is not an order-{m} root of unity",
                                    p.gens[hi as usize].name, p.gens[lo as usize].name
                                )));
                            }
                        }
                    }
                }
                SwapRule::General(terms) => {
                    for (c, w) in terms {
                        if c.field() != &p.field {
                            return Err(Error::FieldMismatch(
                                p.field.describe(),
                                c.field().describe(),
                            ));
                        }
                        validate_raw(w, n)?;
                    }
                }
            }
        }
        for (idx, g) in p.gens.iter().enumerate() {
            let idx = idx as u8;
            match g.class {
                GenClass::Grouplike { .. } => {
                    if p.skew_delta.contains_key(&idx) || p.skew_antipode.contains_key(&idx) {
                        return Err(Error::Presentation(format!(
                            "{} is grouplike; its coproduct and antipode are implied",
                            g.name
                        )));
                    }
                }
                GenClass::SkewPrimitive { .. } => {
                    let d = p.skew_delta.get(&idx).ok_or_else(|| {
                        Error::Presentation(format!("{} has no coproduct", g.name))
                    })?;
                    for (c, w1, w2) in d {
                        if c.field() != &p.field {
                            return Err(Error::FieldMismatch(
                                p.field.describe(),
                                c.field().describe(),
                            ));
                        }
                        validate_raw(w1, n)?;
                        validate_raw(w2, n)?;
                    }
                    let s = p.skew_antipode.get(&idx).ok_or_else(|| {
                        Error::Presentation(format!("{} has no antipode", g.name))
                    })?;
                    for (c, w) in s {
                        if c.field() != &p.field {
                            return Err(Error::FieldMismatch(
                                p.field.describe(),
                                c.field().describe(),
                            ));
                        }
                        validate_raw(w, n)?;
                    }
                }
            }
        }
        if let Some(basis) = &p.finite_basis {
            for w in basis {
                validate_raw(w, n)?;
            }
        }
        let hopf = Hopf(Arc::new(HopfData { p }));
        // A cheap startup probe: multiplication of plain generators must
        // associate, otherwise the rewrite rules are inconsistent.
        hopf.associativity_probe()?;
        Ok(hopf)
    }

    fn data(&self) -> &HopfPresentation {
        &self.0.p
    }

    pub fn name(&self) -> &str {
        &self.0.p.name
    }

    pub fn field(&self) -> &Field {
        &self.0.p.field
    }

    pub fn num_gens(&self) -> usize {
        self.0.p.gens.len()
    }

    pub fn gen_name(&self, idx: u8) -> &str {
        &self.0.p.gens[idx as usize].name
    }

    pub fn gen_class(&self, idx: u8) -> GenClass {
        self.0.p.gens[idx as usize].class
    }

    pub fn gen_index(&self, name: &str) -> Option<u8> {
        self.0
            .p
            .gens
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u8)
    }

    /// The normal-word basis for finite dimensional algebras.
    pub fn finite_basis(&self) -> Result<Vec<HWord>> {
        let raws = self.0.p.finite_basis.as_ref().ok_or_else(|| {
            Error::FiniteBasisRequired(self.name().to_string())
        })?;
        let mut out = vec![];
        for raw in raws {
            let e = HopfElem::from_raw(self, vec![(self.field().one(), raw.clone())])?;
            let mut it = e.terms.iter();
            match (it.next(), it.next()) {
                (Some((w, c)), None) if c.is_one() => out.push(w.clone()),
                _ => {
                    return Err(Error::Presentation(format!(
                        "finite basis entry {raw:?} is not a normal word"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Class-reduce a single exponent. Returns None when the letter
    /// disappears, Some(e) for the kept exponent, or an error / zero marker.
    fn reduce_exp(&self, g: u8, e: i64) -> Result<Reduced> {
        match self.gen_class(g) {
            GenClass::Grouplike { order: 0 } => {
                Ok(if e == 0 { Reduced::Gone } else { Reduced::Keep(e) })
            }
            GenClass::Grouplike { order } => {
                let m = i64::from(order);
                let r = e.rem_euclid(m);
                Ok(if r == 0 { Reduced::Gone } else { Reduced::Keep(r) })
            }
            GenClass::SkewPrimitive { nil } => {
                if e == 0 {
                    return Ok(Reduced::Gone);
                }
                if e < 0 {
                    return Err(Error::NotInvertible(self.gen_name(g).to_string()));
                }
                if nil > 0 && e >= i64::from(nil) {
                    return Ok(Reduced::Vanishes);
                }
                Ok(Reduced::Keep(e))
            }
        }
    }

    /// Normalize coeff * word into the accumulator.
    fn normalize_into(
        &self,
        coeff: Scalar,
        word: RawWord,
        out: &mut BTreeMap<HWord, Scalar>,
    ) -> Result<()> {
        let mut work: Vec<(Scalar, RawWord)> = vec![(coeff, word)];
        while let Some((c, w)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            match self.scan(c, w)? {
                Scanned::Zero => {}
                Scanned::Done(c, w) => {
                    let key = HWord(w);
                    match out.entry(key) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(c);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let s = &*e.get() + &c;
                            if s.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = s;
                            }
                        }
                    }
                }
                Scanned::Requeue(items) => work.extend(items),
            }
        }
        Ok(())
    }

    /// One left-to-right pass: class-reduce and merge letters until either
    /// the word is normal or the first inversion is hit, in which case the
    /// applicable swap rule produces requeued work items.
    fn scan(&self, mut coeff: Scalar, input: RawWord) -> Result<Scanned> {
        let mut acc: RawWord = Vec::with_capacity(input.len());
        let mut rest = input.into_iter();
        while let Some((g, mut e)) = rest.next() {
            loop {
                match self.reduce_exp(g, e)? {
                    Reduced::Gone => break,
                    Reduced::Vanishes => return Ok(Scanned::Zero),
                    Reduced::Keep(r) => e = r,
                }
                match acc.last().copied() {
                    None => {
                        acc.push((g, e));
                        break;
                    }
                    Some((prev, pe)) if prev == g => {
                        acc.pop();
                        e += pe;
                        // Re-reduce the merged exponent.
                        continue;
                    }
                    Some((prev, _)) if prev < g => {
                        acc.push((g, e));
                        break;
                    }
                    Some((hi, e1)) => {
                        // Inversion: acc ends with hi > g.
                        acc.pop();
                        let lo = g;
                        let e2 = e;
                        let rule = self.data().swaps.get(&(hi, lo)).ok_or_else(|| {
                            Error::Presentation(format!(
                                "no swap rule for {}.{}",
                                self.gen_name(hi),
                                self.gen_name(lo)
                            ))
                        })?;
                        let tail: RawWord = rest.collect();
                        let mut items = vec![];
                        match rule {
                            SwapRule::Commute(s) => {
                                coeff = &coeff * &s.pow(e1 * e2)?;
                                let mut w = acc;
                                w.push((lo, e2));
                                w.push((hi, e1));
                                w.extend(tail);
                                items.push((coeff, w));
                            }
                            SwapRule::General(terms) => {
                                if e1 < 1 || e2 < 1 {
                                    return Err(Error::Presentation(format!(
                                        "general swap rule for {}.{} needs positive powers",
                                        self.gen_name(hi),
                                        self.gen_name(lo)
                                    )));
                                }
                                for (rc, rw) in terms {
                                    let mut w = acc.clone();
                                    w.push((hi, e1 - 1));
                                    w.extend(rw.iter().copied());
                                    w.push((lo, e2 - 1));
                                    w.extend(tail.iter().copied());
                                    items.push((&coeff * rc, w));
                                }
                            }
                        }
                        return Ok(Scanned::Requeue(items));
                    }
                }
            }
        }
        Ok(Scanned::Done(coeff, acc))
    }

    fn mul_words(&self, a: &HWord, b: &HWord) -> Result<HopfElem> {
        let mut raw = a.0.clone();
        raw.extend(b.0.iter().copied());
        let mut terms = BTreeMap::new();
        self.normalize_into(self.field().one(), raw, &mut terms)?;
        Ok(HopfElem {
            hopf: self.clone(),
            terms,
        })
    }

    /// Coproduct of a normal word as a 2-leg tensor.
    fn word_coproduct(&self, w: &HWord) -> Result<TensorElem> {
        let mut out = TensorElem::unit(self, 2);
        for &(g, e) in &w.0 {
            match self.gen_class(g) {
                GenClass::Grouplike { .. } => {
                    let mut t = TensorElem::zero(self, 2);
                    t.add_term(vec![HWord(vec![(g, e)]), HWord(vec![(g, e)])], self.field().one());
                    out = out.mul(&t)?;
                }
                GenClass::SkewPrimitive { .. } => {
                    let mut dg = TensorElem::zero(self, 2);
                    for (c, w1, w2) in &self.data().skew_delta[&g] {
                        let l = HopfElem::from_raw(self, vec![(self.field().one(), w1.clone())])?;
                        let r = HopfElem::from_raw(self, vec![(self.field().one(), w2.clone())])?;
                        for (wl, cl) in &l.terms {
                            for (wr, cr) in &r.terms {
                                dg.add_term(vec![wl.clone(), wr.clone()], &(c * cl) * cr);
                            }
                        }
                    }
                    for _ in 0..e {
                        out = out.mul(&dg)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Antipode of a normal word: an anti-algebra map, so letters reverse.
    fn word_antipode(&self, w: &HWord) -> Result<HopfElem> {
        let mut out = HopfElem::one(self);
        for &(g, e) in w.0.iter().rev() {
            let s_letter = match self.gen_class(g) {
                GenClass::Grouplike { .. } => {
                    HopfElem::from_raw(self, vec![(self.field().one(), vec![(g, -e)])])?
                }
                GenClass::SkewPrimitive { .. } => {
                    let sg = HopfElem::from_raw(
                        self,
                        self.data().skew_antipode[&g]
                            .iter()
                            .map(|(c, w)| (c.clone(), w.clone()))
                            .collect(),
                    )?;
                    let mut p = HopfElem::one(self);
                    for _ in 0..e {
                        p = p.mul(&sg)?;
                    }
                    p
                }
            };
            out = out.mul(&s_letter)?;
        }
        Ok(out)
    }

    fn render_word(&self, w: &HWord) -> String {
        if w.0.is_empty() {
            return "1".into();
        }
        w.0.iter()
            .map(|&(g, e)| {
                if e == 1 {
                    self.gen_name(g).to_string()
                } else {
                    format!("{}^{}", self.gen_name(g), e)
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    }

    fn associativity_probe(&self) -> Result<()> {
        let gens: Vec<HopfElem> = (0..self.num_gens() as u8)
            .map(|i| HopfElem::gen(self, i))
            .collect::<Result<_>>()?;
        for a in &gens {
            for b in &gens {
                let ab = a.mul(b)?;
                for c in &gens {
                    let left = ab.mul(c)?;
                    let right = a.mul(&b.mul(c)?)?;
                    if left != right {
                        return Err(Error::AssociativityFailure {
                            z: a.render(),
                            y: b.render(),
                            x: c.render(),
                            left: left.render(),
                            right: right.render(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

enum Reduced {
    Keep(i64),
    Gone,
    Vanishes,
}

enum Scanned {
    Done(Scalar, RawWord),
    Zero,
    Requeue(Vec<(Scalar, RawWord)>),
}

/// An element of a Hopf algebra in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct HopfElem {
    hopf: Hopf,
    terms: BTreeMap<HWord, Scalar>,
}

impl HopfElem {
    pub fn zero(hopf: &Hopf) -> HopfElem {
        HopfElem {
            hopf: hopf.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(hopf: &Hopf) -> HopfElem {
        let mut terms = BTreeMap::new();
        terms.insert(HWord::one(), hopf.field().one());
        HopfElem {
            hopf: hopf.clone(),
            terms,
        }
    }

    pub fn gen(hopf: &Hopf, idx: u8) -> Result<HopfElem> {
        if usize::from(idx) >= hopf.num_gens() {
            return Err(Error::Presentation(format!(
                "generator index {idx} out of range"
            )));
        }
        HopfElem::from_raw(hopf, vec![(hopf.field().one(), vec![(idx, 1)])])
    }

    /// Build and normalize an element from raw (coefficient, word) data.
    pub fn from_raw(hopf: &Hopf, parts: Vec<(Scalar, RawWord)>) -> Result<HopfElem> {
        let mut terms = BTreeMap::new();
        for (c, w) in parts {
            if c.field() != hopf.field() {
                return Err(Error::FieldMismatch(
                    hopf.field().describe(),
                    c.field().describe(),
                ));
            }
            validate_raw(&w, hopf.num_gens())?;
            hopf.normalize_into(c, w, &mut terms)?;
        }
        Ok(HopfElem {
            hopf: hopf.clone(),
            terms,
        })
    }

    pub fn hopf(&self) -> &Hopf {
        &self.hopf
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &HWord) -> Option<&Scalar> {
        self.terms.get(w)
    }

    fn check_same(&self, other: &HopfElem) -> Result<()> {
        if self.hopf != other.hopf {
            return Err(Error::Presentation(format!(
                "elements of different algebras: {} vs {}",
                self.hopf.name(),
                other.hopf.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &HopfElem) -> Result<HopfElem> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            match out.terms.entry(w.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = &*e.get() + c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HopfElem) -> Result<HopfElem> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HopfElem {
        HopfElem {
            hopf: self.hopf.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> HopfElem {
        if s.is_zero() {
            return HopfElem::zero(&self.hopf);
        }
        HopfElem {
            hopf: self.hopf.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &HopfElem) -> Result<HopfElem> {
        self.check_same(other)?;
        let mut terms = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut raw = w1.0.clone();
                raw.extend(w2.0.iter().copied());
                self.hopf.normalize_into(c1 * c2, raw, &mut terms)?;
            }
        }
        Ok(HopfElem {
            hopf: self.hopf.clone(),
            terms,
        })
    }

    /// The counit: grouplikes map to 1, skew-primitive letters to 0.
    pub fn counit(&self) -> Scalar {
        let mut out = self.hopf.field().zero();
        for (w, c) in &self.terms {
            if w.0
                .iter()
                .all(|&(g, _)| self.hopf.gen_class(g).is_grouplike())
            {
                out = &out + c;
            }
        }
        out
    }

    pub fn coproduct(&self) -> Result<TensorElem> {
        let mut out = TensorElem::zero(&self.hopf, 2);
        for (w, c) in &self.terms {
            let t = self.hopf.word_coproduct(w)?;
            out = out.add(&t.scale(c))?;
        }
        Ok(out)
    }

    /// Iterated coproduct with `legs` tensor legs (legs >= 1).
    pub fn coproduct_legs(&self, legs: usize) -> Result<TensorElem> {
        if legs == 0 {
            return Err(Error::Presentation("coproduct needs at least 1 leg".into()));
        }
        let mut out = TensorElem::from_elem(self);
        while out.legs() < legs {
            let last = out.legs() - 1;
            out = out.apply_delta(last)?;
        }
        Ok(out)
    }

    pub fn antipode(&self) -> Result<HopfElem> {
        let mut out = HopfElem::zero(&self.hopf);
        for (w, c) in &self.terms {
            out = out.add(&self.hopf.word_antipode(w)?.scale(c))?;
        }
        Ok(out)
    }

    /// The adjoint action of `self` on `target`: sum of h1 . t . S(h2).
    pub fn adjoint_act(&self, target: &HopfElem) -> Result<HopfElem> {
        self.check_same(target)?;
        let delta = self.coproduct()?;
        let mut out = HopfElem::zero(&self.hopf);
        for (legs, c) in delta.terms() {
            let h1 = HopfElem::from_raw(
                &self.hopf,
                vec![(self.hopf.field().one(), legs[0].0.clone())],
            )?;
            let sh2 = self.hopf.word_antipode(&legs[1])?;
            out = out.add(&h1.mul(target)?.mul(&sh2)?.scale(c))?;
        }
        Ok(out)
    }

    /// Does `self` commute with every generator?
    pub fn is_central(&self) -> Result<bool> {
        for i in 0..self.hopf.num_gens() as u8 {
            let g = HopfElem::gen(&self.hopf, i)?;
            if self.mul(&g)? != g.mul(self)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn render(&self) -> String {
        render_terms(self.terms.iter().rev().map(|(w, c)| {
            let sym = if w.is_one() {
                String::new()
            } else {
                self.hopf.render_word(w)
            };
            (sym, c)
        }))
    }
}

impl fmt::Debug for HopfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// An element of a tensor power of a Hopf algebra, with any number of legs.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElem {
    hopf: Hopf,
    legs: usize,
    terms: BTreeMap<Vec<HWord>, Scalar>,
}

impl TensorElem {
    pub fn zero(hopf: &Hopf, legs: usize) -> TensorElem {
        TensorElem {
            hopf: hopf.clone(),
            legs,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(hopf: &Hopf, legs: usize) -> TensorElem {
        let mut t = TensorElem::zero(hopf, legs);
        t.add_term(vec![HWord::one(); legs], hopf.field().one());
        t
    }

    pub fn from_elem(e: &HopfElem) -> TensorElem {
        let mut t = TensorElem::zero(&e.hopf, 1);
        for (w, c) in &e.terms {
            t.add_term(vec![w.clone()], c.clone());
        }
        t
    }

    /// The tensor product of the given elements, one per leg.
    pub fn pure(parts: &[HopfElem]) -> Result<TensorElem> {
        let hopf = parts
            .first()
            .ok_or_else(|| Error::Presentation("a pure tensor needs at least one leg".into()))?
            .hopf
            .clone();
        let mut out = TensorElem::unit(&hopf, 0);
        for p in parts {
            if p.hopf != hopf {
                return Err(Error::Presentation(
                    "tensor legs from different algebras".into(),
                ));
            }
            let mut next = TensorElem::zero(&hopf, out.legs + 1);
            for (ws, c) in &out.terms {
                for (w, cw) in &p.terms {
                    let mut v = ws.clone();
                    v.push(w.clone());
                    next.add_term(v, c * cw);
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn hopf(&self) -> &Hopf {
        &self.hopf
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<HWord>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, ws: Vec<HWord>, c: Scalar) {
        assert_eq!(ws.len(), self.legs, "tensor term with wrong leg count");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(ws) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &TensorElem) -> Result<()> {
        if self.hopf != other.hopf {
            return Err(Error::Presentation(
                "tensors over different algebras".into(),
            ));
        }
        if self.legs != other.legs {
            return Err(Error::AmbientMismatch(self.legs, other.legs));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (ws, c) in &other.terms {
            out.add_term(ws.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElem) -> Result<TensorElem> {
        self.add(&other.scale(&-&other.hopf.field().one()))
    }

    pub fn scale(&self, s: &Scalar) -> TensorElem {
        if s.is_zero() {
            return TensorElem::zero(&self.hopf, self.legs);
        }
        TensorElem {
            hopf: self.hopf.clone(),
            legs: self.legs,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    /// Componentwise product.
    pub fn mul(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check_same(other)?;
        let mut out = TensorElem::zero(&self.hopf, self.legs);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let legs: Vec<HopfElem> = (0..self.legs)
                    .map(|i| self.hopf.mul_words(&wa[i], &wb[i]))
                    .collect::<Result<_>>()?;
                distribute(&legs, &(ca * cb), &mut out);
            }
        }
        Ok(out)
    }

    /// Replace leg `leg` by its coproduct, adding one leg.
    pub fn apply_delta(&self, leg: usize) -> Result<TensorElem> {
        assert!(leg < self.legs);
        let mut out = TensorElem::zero(&self.hopf, self.legs + 1);
        for (ws, c) in &self.terms {
            let d = self.hopf.word_coproduct(&ws[leg])?;
            for (pair, c2) in &d.terms {
                let mut v = Vec::with_capacity(self.legs + 1);
                v.extend(ws[..leg].iter().cloned());
                v.push(pair[0].clone());
                v.push(pair[1].clone());
                v.extend(ws[leg + 1..].iter().cloned());
                out.add_term(v, c * c2);
            }
        }
        Ok(out)
    }

    /// Apply the counit to leg `leg`, dropping it.
    pub fn apply_counit(&self, leg: usize) -> Result<TensorElem> {
        assert!(leg < self.legs);
        let mut out = TensorElem::zero(&self.hopf, self.legs - 1);
        for (ws, c) in &self.terms {
            let all_grouplike = ws[leg]
                .0
                .iter()
                .all(|&(g, _)| self.hopf.gen_class(g).is_grouplike());
            if all_grouplike {
                let mut v = ws.clone();
                v.remove(leg);
                out.add_term(v, c.clone());
            }
        }
        Ok(out)
    }

    /// Apply the antipode to leg `leg`.
    pub fn apply_antipode(&self, leg: usize) -> Result<TensorElem> {
        assert!(leg < self.legs);
        let mut out = TensorElem::zero(&self.hopf, self.legs);
        for (ws, c) in &self.terms {
            let s = self.hopf.word_antipode(&ws[leg])?;
            for (w, cs) in &s.terms {
                let mut v = ws.clone();
                v[leg] = w.clone();
                out.add_term(v, c * cs);
            }
        }
        Ok(out)
    }

    /// Multiply legs `leg` and `leg + 1` together, dropping one leg.
    pub fn merge_legs(&self, leg: usize) -> Result<TensorElem> {
        assert!(leg + 1 < self.legs);
        let mut out = TensorElem::zero(&self.hopf, self.legs - 1);
        for (ws, c) in &self.terms {
            let prod = self.hopf.mul_words(&ws[leg], &ws[leg + 1])?;
            for (w, cp) in &prod.terms {
                let mut v = Vec::with_capacity(self.legs - 1);
                v.extend(ws[..leg].iter().cloned());
                v.push(w.clone());
                v.extend(ws[leg + 2..].iter().cloned());
                out.add_term(v, c * cp);
            }
        }
        Ok(out)
    }

    /// Insert a unit leg at the given position: a 2-leg tensor with a unit
    /// inserted at 1 becomes the 13-style embedding into three legs.
    pub fn insert_unit(&self, pos: usize) -> TensorElem {
        assert!(pos <= self.legs);
        let mut out = TensorElem::zero(&self.hopf, self.legs + 1);
        for (ws, c) in &self.terms {
            let mut v = Vec::with_capacity(self.legs + 1);
            v.extend(ws[..pos].iter().cloned());
            v.push(HWord::one());
            v.extend(ws[pos..].iter().cloned());
            out.add_term(v, c.clone());
        }
        out
    }

    /// Swap the two legs of a 2-leg tensor.
    pub fn flip(&self) -> Result<TensorElem> {
        if self.legs != 2 {
            return Err(Error::AmbientMismatch(self.legs, 2));
        }
        let mut out = TensorElem::zero(&self.hopf, 2);
        for (ws, c) in &self.terms {
            out.add_term(vec![ws[1].clone(), ws[0].clone()], c.clone());
        }
        Ok(out)
    }

    /// View a 1-leg tensor as a plain element.
    pub fn as_elem(&self) -> Result<HopfElem> {
        if self.legs != 1 {
            return Err(Error::AmbientMismatch(self.legs, 1));
        }
        let mut out = HopfElem::zero(&self.hopf);
        for (ws, c) in &self.terms {
            out = out.add(&HopfElem::from_raw(
                &self.hopf,
                vec![(c.clone(), ws[0].0.clone())],
            )?)?;
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        // The all-ones term renders as an explicit 1(x)...(x)1 symbol.
        render_terms(self.terms.iter().rev().map(|(ws, c)| {
            let sym = ws
                .iter()
                .map(|w| self.hopf.render_word(w))
                .collect::<Vec<_>>()
                .join("(x)");
            (sym, c)
        }))
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn distribute(legs: &[HopfElem], scale: &Scalar, out: &mut TensorElem) {
    let mut stack: Vec<(usize, Vec<HWord>, Scalar)> = vec![(0, vec![], scale.clone())];
    while let Some((i, prefix, c)) = stack.pop() {
        if i == legs.len() {
            out.add_term(prefix, c);
            continue;
        }
        for (w, cw) in &legs[i].terms {
            let mut p = prefix.clone();
            p.push(w.clone());
            stack.push((i + 1, p, &c * cw));
        }
    }
}

/// Full axiom suite: associativity of the rewritten product, counit and
/// coassociativity laws, the antipode law, and multiplicativity of the
/// structure maps, all on a generated test set. `bound` caps the exponents
/// used for infinite-order grouplikes.
pub fn check_hopf_axioms(hopf: &Hopf, bound: u32) -> Result<()> {
    let bound = i64::from(bound.max(1));
    let mut atoms: Vec<HopfElem> = vec![HopfElem::one(hopf)];
    for i in 0..hopf.num_gens() as u8 {
        let mut exps: Vec<i64> = match hopf.gen_class(i) {
            GenClass::Grouplike { order: 0 } => vec![1, -1, bound, -bound],
            GenClass::Grouplike { order } => (1..i64::from(order)).collect(),
            GenClass::SkewPrimitive { nil: 0 } => vec![1, 2.min(bound)],
            GenClass::SkewPrimitive { nil } => (1..i64::from(nil)).collect(),
        };
        exps.sort_unstable();
        exps.dedup();
        for e in exps {
            atoms.push(HopfElem::from_raw(
                hopf,
                vec![(hopf.field().one(), vec![(i, e)])],
            )?);
        }
    }

    for a in &atoms {
        for b in &atoms {
            let ab = a.mul(b)?;
            for c in &atoms {
                let left = ab.mul(c)?;
                let right = a.mul(&b.mul(c)?)?;
                if left != right {
                    return Err(Error::AssociativityFailure {
                        z: a.render(),
                        y: b.render(),
                        x: c.render(),
                        left: left.render(),
                        right: right.render(),
                    });
                }
            }
            // Delta, the counit and S must respect products.
            let dab = ab.coproduct()?;
            let dd = a.coproduct()?.mul(&b.coproduct()?)?;
            if dab != dd {
                return Err(Error::Presentation(format!(
                    "coproduct is not multiplicative on {} and {}: {} vs {}",
                    a.render(),
                    b.render(),
                    dab.render(),
                    dd.render()
                )));
            }
            if ab.counit() != &a.counit() * &b.counit() {
                return Err(Error::Presentation(format!(
                    "counit is not multiplicative on {} and {}",
                    a.render(),
                    b.render()
                )));
            }
            let sab = ab.antipode()?;
            let ss = b.antipode()?.mul(&a.antipode()?)?;
            if sab != ss {
                return Err(Error::Presentation(format!(
                    "antipode is not anti-multiplicative on {} and {}: {} vs {}",
                    a.render(),
                    b.render(),
                    sab.render(),
                    ss.render()
                )));
            }
        }
    }

    for a in &atoms {
        let d = a.coproduct()?;
        let left = d.apply_counit(0)?.as_elem()?;
        let right = d.apply_counit(1)?.as_elem()?;
        if &left != a || &right != a {
            return Err(Error::Presentation(format!(
                "counit law fails on {}: (eps(x)id)Delta = {}, (id(x)eps)Delta = {}",
                a.render(),
                left.render(),
                right.render()
            )));
        }
        let dl = d.apply_delta(0)?;
        let dr = d.apply_delta(1)?;
        if dl != dr {
            return Err(Error::Presentation(format!(
                "coassociativity fails on {}: {} vs {}",
                a.render(),
                dl.render(),
                dr.render()
            )));
        }
        let want = HopfElem::one(hopf).scale(&a.counit());
        let s_left = d.apply_antipode(0)?.merge_legs(0)?.as_elem()?;
        let s_right = d.apply_antipode(1)?.merge_legs(0)?.as_elem()?;
        if s_left != want || s_right != want {
            return Err(Error::Presentation(format!(
                "antipode law fails on {}: m(S(x)id)Delta = {}, m(id(x)S)Delta = {}, want {}",
                a.render(),
                s_left.render(),
                s_right.render(),
                want.render()
            )));
        }
    }
    Ok(())
}

/// The group algebra of the order-2 group, generator `g`.
pub fn kc2(field: &Field) -> Result<Hopf> {
    Hopf::new(HopfPresentation {
        name: "kC2".into(),
        field: field.clone(),
        gens: vec![HopfGen {
            name: "g".into(),
            class: GenClass::Grouplike { order: 2 },
        }],
        swaps: BTreeMap::new(),
        skew_delta: BTreeMap::new(),
        skew_antipode: BTreeMap::new(),
        finite_basis: Some(vec![vec![], vec![(0, 1)]]),
    })
}

/// The 4-dimensional algebra with a grouplike g (order 2) and a
/// skew-primitive x with x^2 = 0, xg = -gx, Delta(x) = x(x)1 + g(x)x.
pub fn sweedler(field: &Field) -> Result<Hopf> {
    let one = field.one();
    Hopf::new(HopfPresentation {
        name: "T2".into(),
        field: field.clone(),
        gens: vec![
            HopfGen {
                name: "g".into(),
                class: GenClass::Grouplike { order: 2 },
            },
            HopfGen {
                name: "x".into(),
                class: GenClass::SkewPrimitive { nil: 2 },
            },
        ],
        swaps: [((1, 0), SwapRule::Commute(-&one))].into(),
        skew_delta: [(1u8, vec![(one.clone(), vec![(1, 1)], vec![]), (one.clone(), vec![(0, 1)], vec![(1, 1)])])]
            .into(),
        skew_antipode: [(1u8, vec![(-&one, vec![(0, 1), (1, 1)])])].into(),
        finite_basis: Some(vec![vec![], vec![(0, 1)], vec![(1, 1)], vec![(0, 1), (1, 1)]]),
    })
}

/// The quantized enveloping algebra of sl2 at the invertible parameter `q`
/// with q^2 != 1. Generators in PBW order F, K, E.
pub fn uqsl2(field: &Field, q: &Scalar) -> Result<Hopf> {
    if q.is_zero() || q.pow(2)?.is_one() {
        return Err(Error::BadParams(
            "the quantum parameter must satisfy q^2 != 1".into(),
        ));
    }
    let one = field.one();
    let qm2 = q.pow(-2)?;
    let c = (q - &q.pow(-1)?).invert()?;
    Hopf::new(HopfPresentation {
        name: "Uqsl2".into(),
        field: field.clone(),
        gens: vec![
            HopfGen {
                name: "F".into(),
                class: GenClass::SkewPrimitive { nil: 0 },
            },
            HopfGen {
                name: "K".into(),
                class: GenClass::Grouplike { order: 0 },
            },
            HopfGen {
                name: "E".into(),
                class: GenClass::SkewPrimitive { nil: 0 },
            },
        ],
        swaps: [
            // K.F = q^-2 F.K
            ((1, 0), SwapRule::Commute(qm2.clone())),
            // E.K = q^-2 K.E
            ((2, 1), SwapRule::Commute(qm2)),
            // E.F = F.E + (K - K^-1)/(q - q^-1)
            (
                (2, 0),
                SwapRule::General(vec![
                    (one.clone(), vec![(0, 1), (2, 1)]),
                    (c.clone(), vec![(1, 1)]),
                    (-&c, vec![(1, -1)]),
                ]),
            ),
        ]
        .into(),
        skew_delta: [
            // Delta(F) = F(x)K^-1 + 1(x)F
            (
                0u8,
                vec![
                    (one.clone(), vec![(0, 1)], vec![(1, -1)]),
                    (one.clone(), vec![], vec![(0, 1)]),
                ],
            ),
            // Delta(E) = E(x)1 + K(x)E
            (
                2u8,
                vec![
                    (one.clone(), vec![(2, 1)], vec![]),
                    (one.clone(), vec![(1, 1)], vec![(2, 1)]),
                ],
            ),
        ]
        .into(),
        skew_antipode: [
            // S(F) = -F.K
            (0u8, vec![(-&one, vec![(0, 1), (1, 1)])]),
            // S(E) = -K^-1.E
            (2u8, vec![(-&one, vec![(1, -1), (2, 1)])]),
        ]
        .into(),
        finite_basis: None,
    })
}

/// The two-parameter-free gl2 version: grouplikes G1, G2 with
/// K = G1.G2^-1 recovering the sl2 conventions. Generators F, G1, G2, E.
pub fn uqgl2(field: &Field, q: &Scalar) -> Result<Hopf> {
    if q.is_zero() || q.pow(2)?.is_one() {
        return Err(Error::BadParams(
            "the quantum parameter must satisfy q^2 != 1".into(),
        ));
    }
    let one = field.one();
    let qi = q.pow(-1)?;
    let c = (q - &qi).invert()?;
    Hopf::new(HopfPresentation {
        name: "Uqgl2".into(),
        field: field.clone(),
        gens: vec![
            HopfGen {
                name: "F".into(),
                class: GenClass::SkewPrimitive { nil: 0 },
            },
            HopfGen {
                name: "G1".into(),
                class: GenClass::Grouplike { order: 0 },
            },
            HopfGen {
                name: "G2".into(),
                class: GenClass::Grouplike { order: 0 },
            },
            HopfGen {
                name: "E".into(),
                class: GenClass::SkewPrimitive { nil: 0 },
            },
        ],
        swaps: [
            // G1.F = q^-1 F.G1
            ((1, 0), SwapRule::Commute(qi.clone())),
            // G2.F = q F.G2
            ((2, 0), SwapRule::Commute(q.clone())),
            ((2, 1), SwapRule::Commute(one.clone())),
            // E.G1 = q^-1 G1.E
            ((3, 1), SwapRule::Commute(qi.clone())),
            // E.G2 = q G2.E
            ((3, 2), SwapRule::Commute(q.clone())),
            // E.F = F.E + (G1.G2^-1 - G2.G1^-1)/(q - q^-1)
            (
                (3, 0),
                SwapRule::General(vec![
                    (one.clone(), vec![(0, 1), (3, 1)]),
                    (c.clone(), vec![(1, 1), (2, -1)]),
                    (-&c, vec![(1, -1), (2, 1)]),
                ]),
            ),
        ]
        .into(),
        skew_delta: [
            // Delta(F) = F(x)G2.G1^-1 + 1(x)F
            (
                0u8,
                vec![
                    (one.clone(), vec![(0, 1)], vec![(1, -1), (2, 1)]),
                    (one.clone(), vec![], vec![(0, 1)]),
                ],
            ),
            // Delta(E) = E(x)1 + G1.G2^-1(x)E
            (
                3u8,
                vec![
                    (one.clone(), vec![(3, 1)], vec![]),
                    (one.clone(), vec![(1, 1), (2, -1)], vec![(3, 1)]),
                ],
            ),
        ]
        .into(),
        skew_antipode: [
            // S(F) = -F.G1.G2^-1
            (0u8, vec![(-&one, vec![(0, 1), (1, 1), (2, -1)])]),
            // S(E) = -G2.G1^-1.E
            (3u8, vec![(-&one, vec![(1, -1), (2, 1), (3, 1)])]),
        ]
        .into(),
        finite_basis: None,
    })
}
