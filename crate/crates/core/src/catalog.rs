//! The shipped dataset: rings, relations, restriction maps and gluing data
//! for the moduli of genus-three curves, embedded at compile time.

use std::sync::OnceLock;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::chowfile::{ChowDocument, ChowFileError, EntryInfo, EntryKind};
use crate::groebner::{GroebnerError, MapGraph};
use crate::poly::{Polynomial, RingMap};

const SOURCES: &[(&str, &str)] = &[
    ("rings.chow", include_str!("../catalog/rings.chow")),
    ("open.chow", include_str!("../catalog/open.chow")),
    ("hyperelliptic.chow", include_str!("../catalog/hyperelliptic.chow")),
    ("delta.chow", include_str!("../catalog/delta.chow")),
    ("restrictions.chow", include_str!("../catalog/restrictions.chow")),
    ("m3tilde.chow", include_str!("../catalog/m3tilde.chow")),
    ("m3bar.chow", include_str!("../catalog/m3bar.chow")),
    ("faber.chow", include_str!("../catalog/faber.chow")),
    ("pipeline.chow", include_str!("../catalog/pipeline.chow")),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("no catalog entry named `{0}`")]
    UnknownEntry(String),
    #[error("catalog entry `{name}` is not homogeneous of degree {expected}")]
    HomogeneityViolation { name: String, expected: u32 },
    #[error(transparent)]
    File(#[from] ChowFileError),
}

/// The raw `.chow` sources of the catalog, in load order.
pub fn sources() -> &'static [(&'static str, &'static str)] {
    SOURCES
}

/// The parsed catalog. Parsing happens once; the embedded sources are
/// checked by the test suite, so a failure here is a build defect.
pub fn catalog() -> &'static ChowDocument {
    static DOC: OnceLock<ChowDocument> = OnceLock::new();
    DOC.get_or_init(|| ChowDocument::parse_sources(SOURCES).expect("embedded catalog parses"))
}

/// One catalog entry together with its note and checksum.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub info: EntryInfo,
    pub canonical: String,
    pub checksum: String,
}

fn canonical_text(doc: &ChowDocument, info: &EntryInfo) -> String {
    let name = &info.name;
    match info.kind {
        EntryKind::Ring => format!("{:?}", doc.rings[name]),
        EntryKind::Ideal => doc.ideals[name].relations.iter().map(|(n, p)| format!("{n} = {p}\n")).collect(),
        EntryKind::Class => format!("{}\n", doc.classes[name]),
        EntryKind::Map => {
            let d = &doc.maps[name];
            let mut s = format!("{:?} -> {:?}", d.map.source(), d.map.target());
            if let Some(j) = &d.modulo {
                s.push_str(&format!(" mod {j}"));
            }
            s.push('\n');
            for (i, img) in d.map.images().iter().enumerate() {
                s.push_str(&format!("{} -> {img}\n", d.map.source().name(i)));
            }
            s
        }
        EntryKind::Stratum => {
            let d = &doc.strata[name];
            format!("{} / {}\n", d.ring, d.ideal.as_deref().unwrap_or("0"))
        }
        EntryKind::Glue => {
            let g = &doc.glues[name];
            format!(
                "open {}\nclosed {}\nclass {} : {}\npullback {}\nctop {}\n",
                g.open, g.closed, g.class_var, g.class_degree, g.pullback, g.c_top
            )
        }
    }
}

/// Looks up an entry, returning its canonical print and a sha256 checksum of
/// that print.
pub fn load(name: &str) -> Result<CatalogEntry, CatalogError> {
    let doc = catalog();
    let info = doc.entry(name).ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))?;
    let canonical = canonical_text(doc, info);
    let checksum = Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    Ok(CatalogEntry { info: info.clone(), canonical, checksum })
}

/// All entries in declaration order.
pub fn list() -> Vec<CatalogEntry> {
    catalog().entries.iter().map(|e| load(&e.name).expect("listed entry")).collect()
}

/// Re-checks that a relation list has the documented per-relation degrees.
pub fn audit_degrees(name: &str, expected: &[u32]) -> Result<(), CatalogError> {
    let rel = catalog().ideals.get(name).ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))?;
    for ((n, p), &d) in rel.relations.iter().zip(expected) {
        if p.degree() != Some(d) {
            return Err(CatalogError::HomogeneityViolation { name: format!("{name}.{n}"), expected: d });
        }
    }
    Ok(())
}

/// The change of generators between `lambda1, H, delta1, delta11` and
/// `lambda1, delta0, delta1, kappa2`. The backward map is obtained by
/// lifting each target generator through the forward map.
pub fn faber_maps() -> Result<(RingMap, RingMap), GroebnerError> {
    let forward = catalog().maps["faber.forward"].map.clone();
    let graph = MapGraph::new(&forward, None)?;
    let target = forward.target().clone();
    let mut images = Vec::new();
    for i in 0..target.nvars() {
        let x = Polynomial::variable(&target, i);
        images.push(graph.lift(&x)?.ok_or_else(|| GroebnerError::NotDivisible(format!("{x} has no preimage")))?);
    }
    let backward = RingMap::new(&target, forward.source(), images)?;
    Ok((forward, backward))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_parses() {
        let doc = catalog();
        assert_eq!(doc.ideals["m3bar.relations"].relations.len(), 15);
        assert_eq!(doc.classes["hyperelliptic.c9"].degree(), Some(9));
        assert_eq!(doc.classes["hyperelliptic.c9"].len(), 30);
        assert_eq!(
            doc.classes["delta1.f"].to_string(),
            doc.rings["delta1"].parse("2*t1*(t0 + t1)*(t0 - 2*t1)*(t0 - 3*t1)").unwrap().to_string()
        );
    }

    #[test]
    fn faber_round_trip() {
        let (fwd, bwd) = faber_maps().unwrap();
        let src = fwd.source();
        assert_eq!(fwd.image_of("H").unwrap(), &fwd.target().parse("9*lambda1 - 3*delta1 - delta0").unwrap());
        assert_eq!(fwd.image_of("lambda1").unwrap(), &fwd.target().parse("lambda1").unwrap());
        for (i, p) in fwd.then(&bwd).unwrap().images().iter().enumerate() {
            assert_eq!(p, &Polynomial::variable(src, i));
        }
        for (i, p) in bwd.then(&fwd).unwrap().images().iter().enumerate() {
            assert_eq!(p, &Polynomial::variable(fwd.target(), i));
        }
    }

    #[test]
    fn entries_have_notes_and_stable_checksums() {
        for e in list() {
            assert!(!e.info.note.is_empty(), "{} has no note", e.info.name);
            assert_eq!(e.checksum.len(), 64);
            assert_eq!(load(&e.info.name).unwrap().checksum, e.checksum);
        }
        assert!(matches!(load("nope"), Err(CatalogError::UnknownEntry(_))));
    }
}
