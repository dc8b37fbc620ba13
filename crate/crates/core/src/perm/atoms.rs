//! Built-in generators and the name registry used by the text format.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::cert::{PeriodicSwaps, SwapCertificate};
use super::{Atom, AtomRule, FinPerm, PermError, PermExpr};

/// A generator given by a finite permutation (`tau` and friends).
pub struct FiniteRule(pub FinPerm);

impl AtomRule for FiniteRule {
    fn forward(&self, x: u64) -> Result<u64, PermError> {
        Ok(self.0.apply(x))
    }

    fn inverse(&self, y: u64) -> Result<u64, PermError> {
        Ok(self.0.apply_inverse(y))
    }

    fn finitary(&self) -> Option<FinPerm> {
        Some(self.0.clone())
    }
}

/// `z(0)=0, z(2)=1, z(2t)=2t-2 for 2t≥4, z(2t+1)=2t+3`: one fixed point and a
/// single infinite cycle `… 6 4 2 1 3 5 …`.
pub struct ZRule;

impl AtomRule for ZRule {
    fn forward(&self, k: u64) -> Result<u64, PermError> {
        Ok(match k {
            0 => 0,
            2 => 1,
            k if k % 2 == 0 => k - 2,
            k => k + 2,
        })
    }

    fn inverse(&self, k: u64) -> Result<u64, PermError> {
        Ok(match k {
            0 => 0,
            1 => 2,
            k if k % 2 == 0 => k + 2,
            k => k - 2,
        })
    }
}

/// Involution following a periodic swap pattern (`swapadj`, `blk`).
pub struct PeriodicRule(pub SwapCertificate);

impl AtomRule for PeriodicRule {
    fn forward(&self, x: u64) -> Result<u64, PermError> {
        Ok(self.0.image(x))
    }

    fn inverse(&self, y: u64) -> Result<u64, PermError> {
        Ok(self.0.image(y))
    }

    fn swaps(&self) -> Option<SwapCertificate> {
        Some(self.0.clone())
    }
}

pub fn tau() -> Atom {
    Atom::new("tau", None, Arc::new(FiniteRule(FinPerm::transposition(0, 1).unwrap())))
}

pub fn z() -> Atom {
    Atom::new("z", None, Arc::new(ZRule))
}

/// `∏_j (2j, 2j+1)`.
pub fn swapadj() -> Atom {
    let pat = PeriodicSwaps::new(2, vec![(0, 1)], vec![]).unwrap();
    Atom::new("swapadj", None, Arc::new(PeriodicRule(SwapCertificate::periodic(pat))))
}

/// `∏_j (4j, 4j+1)`: infinitely many 2-cycles and infinitely many fixed points.
pub fn blk() -> Atom {
    let pat = PeriodicSwaps::new(4, vec![(0, 1)], vec![2, 3]).unwrap();
    Atom::new("blk", None, Arc::new(PeriodicRule(SwapCertificate::periodic(pat))))
}

/// `∏_j (4j+2, 4j+3)`, which is `swapadj*blk` with its own certificate.
pub fn swapadj_fixed_blocks_certificate() -> SwapCertificate {
    SwapCertificate::periodic(PeriodicSwaps::new(4, vec![(2, 3)], vec![0, 1]).unwrap())
}

/// `swapadj*blk` as an atom carrying its certificate.
pub fn swapadj_fixed() -> Atom {
    Atom::new(
        "swapadj_fixed",
        None,
        Arc::new(PeriodicRule(swapadj_fixed_blocks_certificate())),
    )
}

enum Entry {
    Plain(Atom),
    Family(Arc<dyn Fn(u64) -> Atom + Send + Sync>),
}

/// Resolves generator names in the text format to evaluation rules.
#[derive(Default)]
pub struct AtomRegistry {
    entries: BTreeMap<String, Entry>,
}

impl AtomRegistry {
    pub fn empty() -> Self {
        AtomRegistry::default()
    }

    /// `tau`, `z`, `swapadj`, `blk`, `swapadj_fixed`.
    pub fn standard() -> Self {
        let mut r = AtomRegistry::empty();
        for a in [tau(), z(), swapadj(), blk(), swapadj_fixed()] {
            r.insert(a);
        }
        r
    }

    /// Registers (or replaces) a plain atom under its own name.
    pub fn insert(&mut self, atom: Atom) {
        self.entries.insert(atom.name().to_string(), Entry::Plain(atom));
    }

    /// Registers a parameterized family such as `p[n]`.
    pub fn insert_family(&mut self, name: &str, make: impl Fn(u64) -> Atom + Send + Sync + 'static) {
        self.entries.insert(name.to_string(), Entry::Family(Arc::new(make)));
    }

    pub fn resolve(&self, name: &str, param: Option<u64>) -> Option<Atom> {
        match (self.entries.get(name)?, param) {
            (Entry::Plain(a), None) => Some(a.clone()),
            (Entry::Family(f), Some(n)) => Some(f(n)),
            _ => None,
        }
    }

    pub fn get(&self, name: &str) -> Option<PermExpr> {
        self.resolve(name, None).map(PermExpr::Atom)
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.resolve(atom.name(), atom.param()).is_some()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|s| s.as_str())
    }

    pub fn is_family(&self, name: &str) -> bool {
        matches!(self.entries.get(name), Some(Entry::Family(_)))
    }
}
