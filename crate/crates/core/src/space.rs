//! Finite possibility spaces, gambles and events.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// An ordered list of distinct world names. The order is fixed at
/// construction and every vector, partition and file format refers to it.
#[derive(Debug, PartialEq, Eq)]
pub struct PossibilitySpace {
    worlds: Vec<String>,
    index: HashMap<String, usize>,
}

/// Shared handle to a possibility space.
pub type Space = Arc<PossibilitySpace>;

pub fn make_space<S: AsRef<str>>(names: &[S]) -> Result<Space> {
    if names.is_empty() {
        return Err(Error::EmptySpace);
    }
    let mut index = HashMap::with_capacity(names.len());
    let mut worlds = Vec::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        let name = name.as_ref().to_string();
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateWorld(name));
        }
        worlds.push(name);
    }
    Ok(Arc::new(PossibilitySpace { worlds, index }))
}

/// Space with worlds named `w1..wn`, used when no model file names them.
pub fn anonymous_space(size: usize) -> Result<Space> {
    let names: Vec<String> = (1..=size).map(|i| format!("w{i}")).collect();
    make_space(&names)
}

impl PossibilitySpace {
    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn name(&self, index: usize) -> &str {
        &self.worlds[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }
}

pub(crate) fn same_space(a: &Space, b: &Space) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn ensure_same(a: &Space, b: &Space) -> Result<()> {
    if same_space(a, b) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// A gamble: an exact rational reward for every world.
#[derive(Clone)]
pub struct Gamble {
    space: Space,
    values: Vec<Rational>,
}

impl PartialEq for Gamble {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.values == other.values
    }
}

impl Eq for Gamble {}

impl fmt::Debug for Gamble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

impl Gamble {
    pub fn new(space: &Space, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::DimensionMismatch {
                expected: space.len(),
                found: values.len(),
            });
        }
        Ok(Gamble {
            space: space.clone(),
            values,
        })
    }

    pub fn from_ints(space: &Space, values: &[i64]) -> Result<Self> {
        Gamble::new(space, values.iter().map(|&v| int(v)).collect())
    }

    /// Parses a comma-separated list of rationals aligned to world order.
    pub fn parse(space: &Space, csv: &str) -> Result<Self> {
        let values = csv
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Gamble::new(space, values)
    }

    pub fn zero(space: &Space) -> Self {
        Gamble {
            space: space.clone(),
            values: vec![Rational::zero(); space.len()],
        }
    }

    pub fn constant(space: &Space, value: Rational) -> Self {
        Gamble {
            space: space.clone(),
            values: vec![value; space.len()],
        }
    }

    pub fn indicator(event: &Event) -> Self {
        let values = (0..event.space.len())
            .map(|i| int(event.contains(i) as i64))
            .collect();
        Gamble {
            space: event.space.clone(),
            values,
        }
    }

    /// The indicator of a single world.
    pub fn unit(space: &Space, world: usize) -> Self {
        let mut values = vec![Rational::zero(); space.len()];
        values[world] = int(1);
        Gamble {
            space: space.clone(),
            values,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, world: usize) -> &Rational {
        &self.values[world]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_csv(&self) -> String {
        self.values
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn add(&self, other: &Gamble) -> Result<Gamble> {
        ensure_same(&self.space, &other.space)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Gamble) -> Result<Gamble> {
        ensure_same(&self.space, &other.space)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, factor: &Rational) -> Gamble {
        self.map(|v| v * factor)
    }

    pub fn neg(&self) -> Gamble {
        self.map(|v| -v)
    }

    /// Adds a constant to every world.
    pub fn shift(&self, delta: &Rational) -> Gamble {
        self.map(|v| v + delta)
    }

    pub fn map(&self, mut f: impl FnMut(&Rational) -> Rational) -> Gamble {
        Gamble {
            space: self.space.clone(),
            values: self.values.iter().map(&mut f).collect(),
        }
    }

    pub fn map_indexed(&self, mut f: impl FnMut(usize, &Rational) -> Rational) -> Gamble {
        Gamble {
            space: self.space.clone(),
            values: self.values.iter().enumerate().map(|(i, v)| f(i, v)).collect(),
        }
    }

    fn zip_with(&self, other: &Gamble, f: impl Fn(&Rational, &Rational) -> Rational) -> Gamble {
        Gamble {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Membership in L⁺: non-negative everywhere and not the zero gamble.
    pub fn is_nonneg_nonzero(&self) -> bool {
        !self.values.iter().any(Signed::is_negative) && !self.is_zero()
    }

    /// Pointwise `self >= other`.
    pub fn dominates(&self, other: &Gamble) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a >= b)
    }

    /// Minimum over the worlds of a non-empty event.
    pub fn min_over(&self, event: &Event) -> Option<Rational> {
        event.iter().map(|i| &self.values[i]).min().cloned()
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        self.values
            .iter()
            .zip(other)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

pub fn gamble_add(f: &Gamble, g: &Gamble) -> Result<Gamble> {
    f.add(g)
}

pub fn gamble_scale(c: &Rational, f: &Gamble) -> Gamble {
    f.scale(c)
}

pub fn is_nonneg_nonzero(f: &Gamble) -> bool {
    f.is_nonneg_nonzero()
}

/// A subset of the worlds of a space.
#[derive(Clone)]
pub struct Event {
    space: Space,
    members: BTreeSet<usize>,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.members == other.members
    }
}

impl Eq for Event {}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(|i| self.space.name(i)).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

impl Event {
    pub fn new(space: &Space, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i >= space.len()) {
            return Err(Error::UnknownWorld(format!("#{bad}")));
        }
        Ok(Event {
            space: space.clone(),
            members,
        })
    }

    pub fn from_names<S: AsRef<str>>(space: &Space, names: &[S]) -> Result<Self> {
        let members = names
            .iter()
            .map(|n| space.index_of(n.as_ref()))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Event {
            space: space.clone(),
            members,
        })
    }

    /// Event whose members are the set bits of `mask` (world `i` is bit `i`).
    pub fn from_mask(space: &Space, mask: u64) -> Self {
        let members = (0..space.len()).filter(|i| mask >> i & 1 == 1).collect();
        Event {
            space: space.clone(),
            members,
        }
    }

    pub fn empty(space: &Space) -> Self {
        Event {
            space: space.clone(),
            members: BTreeSet::new(),
        }
    }

    pub fn full(space: &Space) -> Self {
        Event {
            space: space.clone(),
            members: (0..space.len()).collect(),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn contains(&self, world: usize) -> bool {
        self.members.contains(&world)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.space.len()
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersect(&self, other: &Event) -> Result<Event> {
        ensure_same(&self.space, &other.space)?;
        Ok(Event {
            space: self.space.clone(),
            members: self.members.intersection(&other.members).copied().collect(),
        })
    }

    pub fn union(&self, other: &Event) -> Result<Event> {
        ensure_same(&self.space, &other.space)?;
        Ok(Event {
            space: self.space.clone(),
            members: self.members.union(&other.members).copied().collect(),
        })
    }

    pub fn difference(&self, other: &Event) -> Result<Event> {
        ensure_same(&self.space, &other.space)?;
        Ok(Event {
            space: self.space.clone(),
            members: self.members.difference(&other.members).copied().collect(),
        })
    }

    pub fn complement(&self) -> Event {
        Event {
            space: self.space.clone(),
            members: (0..self.space.len())
                .filter(|i| !self.members.contains(i))
                .collect(),
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.iter().map(|i| self.space.name(i).to_string()).collect()
    }

    pub fn mask(&self) -> u64 {
        self.iter().fold(0u64, |m, i| m | (1 << i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn abc() -> Space {
        make_space(&["a", "b", "c"]).unwrap()
    }

    #[test]
    fn make_space_validates() {
        assert_eq!(abc().len(), 3);
        assert_eq!(make_space(&["a", "a"]), Err(Error::DuplicateWorld("a".into())));
        assert_eq!(make_space::<&str>(&[]), Err(Error::EmptySpace));
    }

    #[test]
    fn add_and_scale() {
        let s = abc();
        let f = Gamble::from_ints(&s, &[1, -1, 0]).unwrap();
        let g = Gamble::from_ints(&s, &[0, 0, 1]).unwrap();
        assert_eq!(gamble_add(&f, &g).unwrap(), Gamble::from_ints(&s, &[1, -1, 1]).unwrap());
        assert_eq!(gamble_add(&f, &Gamble::zero(&s)).unwrap(), f);
        let half = Gamble::new(&s, vec![ratio(1, 2), int(0), int(0)]).unwrap();
        assert_eq!(half.add(&half).unwrap(), Gamble::from_ints(&s, &[1, 0, 0]).unwrap());

        assert_eq!(gamble_scale(&int(2), &f), Gamble::from_ints(&s, &[2, -2, 0]).unwrap());
        assert_eq!(gamble_scale(&int(1), &f), f);
        assert!(gamble_scale(&int(0), &f).is_zero());
    }

    #[test]
    fn space_mismatch() {
        let s = abc();
        let t = make_space(&["x", "y", "z"]).unwrap();
        let f = Gamble::zero(&s);
        let g = Gamble::zero(&t);
        assert_eq!(f.add(&g), Err(Error::SpaceMismatch));
        // structurally equal spaces are interchangeable
        let s2 = abc();
        assert!(f.add(&Gamble::zero(&s2)).is_ok());
    }

    #[test]
    fn nonneg_nonzero() {
        let s = abc();
        assert!(is_nonneg_nonzero(&Gamble::from_ints(&s, &[0, 0, 1]).unwrap()));
        assert!(!is_nonneg_nonzero(&Gamble::from_ints(&s, &[0, 0, 0]).unwrap()));
        assert!(!is_nonneg_nonzero(&Gamble::from_ints(&s, &[1, -1, 0]).unwrap()));
    }

    #[test]
    fn parse_csv() {
        let s = abc();
        let f = Gamble::parse(&s, "1/2, -3, 0").unwrap();
        assert_eq!(f.values()[0], ratio(1, 2));
        assert_eq!(f.to_csv(), "1/2,-3,0");
        assert!(matches!(
            Gamble::parse(&s, "1,2"),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn events() {
        let s = abc();
        let e = Event::from_names(&s, &["a", "c"]).unwrap();
        assert_eq!(e.mask(), 0b101);
        assert_eq!(e.complement(), Event::from_names(&s, &["b"]).unwrap());
        assert_eq!(Gamble::indicator(&e), Gamble::from_ints(&s, &[1, 0, 1]).unwrap());
        assert!(Event::from_names(&s, &["q"]).is_err());
        assert_eq!(Event::from_mask(&s, 0b011).names(), vec!["a", "b"]);
    }
}
