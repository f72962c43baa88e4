//! Global symbol registry. Index order fixes the monomial order: lower index
//! means more significant variable. `h1` and `h2` are always 0 and 1.

use once_cell::sync::Lazy;
use parking_lot::RwLock;
use std::collections::HashMap;

pub type Var = u16;

pub const H1: Var = 0;
pub const H2: Var = 1;

struct Registry {
    names: Vec<String>,
    index: HashMap<String, Var>,
}

static REGISTRY: Lazy<RwLock<Registry>> = Lazy::new(|| {
    let mut r = Registry { names: Vec::new(), index: HashMap::new() };
    // Names used by the library are registered up front so that variable
    // indices, and hence printed canonical forms, never depend on which
    // thread happened to touch a symbol first.
    let mut fixed: Vec<String> = ["h1", "h2", "z", "t", "lam", "mu", "mu2", "mu3", "q1", "q2", "p1", "p2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    fixed.extend((1..=6).map(|i| format!("lam{i}")));
    fixed.extend((1..=6).map(|i| format!("nu{i}")));
    for k in 1..=3 {
        fixed.extend((1..=4).map(|a| format!("mu{k}_{a}")));
    }
    for n in fixed {
        r.index.insert(n.clone(), r.names.len() as Var);
        r.names.push(n);
    }
    RwLock::new(r)
});

/// Returns the variable for `name`, registering it on first use.
/// `h3` is not a variable; callers go through [`crate::ratfun::Scalar::h3`].
pub fn intern(name: &str) -> Var {
    assert!(name != "h3", "h3 is eliminated, never interned");
    if let Some(v) = REGISTRY.read().index.get(name) {
        return *v;
    }
    let mut w = REGISTRY.write();
    if let Some(v) = w.index.get(name) {
        return *v;
    }
    let v = w.names.len() as Var;
    w.index.insert(name.to_string(), v);
    w.names.push(name.to_string());
    v
}

pub fn lookup(name: &str) -> Option<Var> {
    REGISTRY.read().index.get(name).copied()
}

pub fn name(v: Var) -> String {
    REGISTRY.read().names[v as usize].clone()
}

pub fn valid_name(s: &str) -> bool {
    let mut c = s.chars();
    match c.next() {
        Some(f) if f.is_ascii_alphabetic() => c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_'),
        _ => false,
    }
}
