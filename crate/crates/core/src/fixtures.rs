//! Bundled case-study manifests.
//!
//! Each entry is compiled into the library, so examples and tests need no file paths.

use crate::error::{Error, Result};
use crate::ir::LayeredSystem;
use crate::manifest::{self, Golden};

/// A bundled manifest and what it exercises.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub source: &'static str,
    /// Expected implementations and specifications, as `(golden ...)` forms.
    pub goldens: &'static str,
}

macro_rules! fixture {
    ($name:literal, $summary:literal) => {
        Fixture {
            name: $name,
            summary: $summary,
            source: include_str!(concat!("../fixtures/", $name, ".moss")),
            goldens: include_str!(concat!("../fixtures/goldens/", $name, ".moss")),
        }
    };
}

/// Every bundled fixture, in a fixed order.
pub const CATALOG: &[Fixture] = &[
    fixture!("ticketvendor", "ticket vendor over a two-stack queue over a list-backed stack"),
    fixture!("queue-as-list", "the same ticket vendor over a queue kept in one list"),
    fixture!("list", "list operations with given code, for specification mining"),
    fixture!("arraylist-mock", "growable array list with capacity, for specification mining"),
    fixture!("hashset-mock", "duplicate-free list set, for specification mining"),
    fixture!("hashmap-mock", "three-bucket hash map with a given specification"),
    fixture!("hashmap-collision-bug", "three-bucket hash map that spills colliding keys into the next bucket"),
    fixture!("hashmap2-over-arraylist", "hash map over an array list with a complete specification"),
    fixture!("arraylist-weak-ias", "hash map over an array list whose specification omits ensureCapacity"),
];

pub fn fixture(name: &str) -> Result<&'static Fixture> {
    CATALOG.iter().find(|f| f.name == name).ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

/// Parses and validates the named fixture.
pub fn load_fixture(name: &str) -> Result<LayeredSystem> {
    fixture(name)?.system()
}

impl Fixture {
    pub fn system(&self) -> Result<LayeredSystem> {
        manifest::load_project(self.source)
    }

    pub fn goldens(&self) -> Result<Vec<Golden>> {
        manifest::parse_goldens(self.goldens)
    }

    /// The system with every golden implementation and specification filled in.
    pub fn completed(&self) -> Result<LayeredSystem> {
        let mut sys = self.system()?;
        for g in self.goldens()? {
            let i = sys.layer_of(&g.module)?;
            let m = &mut sys.modules[i];
            m.implementation.extend(g.implementation);
            if g.ias.is_some() {
                m.ias = g.ias;
            }
        }
        Ok(sys)
    }

    /// The golden entry for `module`, if any.
    pub fn golden(&self, module: &str) -> Result<Option<Golden>> {
        Ok(self.goldens()?.into_iter().find(|g| &*g.module == module))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        for f in CATALOG {
            load_fixture(f.name).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        }
    }

    #[test]
    fn goldens_name_modules_of_their_fixture() {
        for f in CATALOG {
            let sys = f.system().unwrap();
            let goldens = f.goldens().unwrap_or_else(|e| panic!("{}: {e}", f.name));
            assert!(!goldens.is_empty(), "{}", f.name);
            for g in goldens {
                assert!(sys.layer_of(&g.module).is_ok(), "{}: {}", f.name, g.module);
            }
        }
    }

    #[test]
    fn completed_systems_pass_their_checks() {
        use crate::pipeline::{check_layer, RunConfig, Status};
        // the buggy map violates its golden spec; the weak spec leaves the layer above unable to run
        let expect_failure =
            |f: &str, i: usize| (f, i) == ("hashmap-collision-bug", 0) || (f, i) == ("arraylist-weak-ias", 1);
        for f in CATALOG {
            let sys = f.completed().unwrap();
            for i in 0..sys.layers() {
                let (status, _) = check_layer(&sys, i, &RunConfig::default()).unwrap();
                assert_eq!(status == Status::Ok, !expect_failure(f.name, i), "{} layer {i}: {status:?}", f.name);
            }
        }
    }

    #[test]
    fn unknown_names_are_reported() {
        assert!(matches!(load_fixture("no-such"), Err(Error::UnknownFixture(n)) if n == "no-such"));
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = CATALOG.iter().map(|f| f.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), CATALOG.len());
    }
}
