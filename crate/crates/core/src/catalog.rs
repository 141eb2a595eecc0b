//! Complexes shipped with the crate.

use crate::complex::OrderedComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Boundary,
    Simplicial { complete: bool },
}

pub struct Bundled {
    pub name: &'static str,
    pub format: Format,
    pub text: &'static str,
}

impl Bundled {
    pub fn load(&self) -> OrderedComplex {
        match self.format {
            Format::Boundary => OrderedComplex::from_boundary_format(self.text),
            Format::Simplicial { complete } => {
                OrderedComplex::from_simplicial_format(self.text, complete)
            }
        }
        .unwrap_or_else(|e| panic!("bundled complex {}: {e}", self.name))
    }
}

pub const BUNDLED: &[Bundled] = &[
    Bundled {
        name: "point",
        format: Format::Simplicial { complete: false },
        text: include_str!("../data/point.smp"),
    },
    Bundled {
        name: "triangle_graph",
        format: Format::Simplicial { complete: false },
        text: include_str!("../data/triangle_graph.smp"),
    },
    Bundled {
        name: "hollow_tetrahedron",
        format: Format::Simplicial { complete: true },
        text: include_str!("../data/hollow_tetrahedron.smp"),
    },
    Bundled {
        name: "two_component",
        format: Format::Simplicial { complete: true },
        text: include_str!("../data/two_component.smp"),
    },
    Bundled {
        name: "annulus_coarse",
        format: Format::Boundary,
        text: include_str!("../data/annulus_coarse.bnd"),
    },
    Bundled {
        name: "annulus",
        format: Format::Boundary,
        text: include_str!("../data/annulus.bnd"),
    },
    Bundled {
        name: "wheel",
        format: Format::Boundary,
        text: include_str!("../data/wheel.bnd"),
    },
];

pub fn bundled(name: &str) -> Option<OrderedComplex> {
    BUNDLED.iter().find(|b| b.name == name).map(Bundled::load)
}

pub fn annulus() -> OrderedComplex {
    BUNDLED[5].load()
}

pub fn wheel() -> OrderedComplex {
    BUNDLED[6].load()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_load() {
        for b in BUNDLED {
            assert!(b.load().len() > 1, "{}", b.name);
        }
        assert_eq!(annulus().count(1), 24);
        assert_eq!(
            wheel().counts().iter().map(|(_, n)| *n).collect::<Vec<_>>(),
            vec![1, 17, 32, 17]
        );
    }
}
