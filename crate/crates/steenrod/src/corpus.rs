//! Corpus files: the JSON ingestion format for spaces, pairs, covers,
//! filtrations and maps.
//!
//! A corpus is a `format_version` plus a list of named items. Spaces can be
//! spelled out (`counts` + `faces`) or named by a builder (`"torus"`,
//! `"sphere:3"`, `"circle:5"`); pairs, covers and maps either reference
//! delta-complex items by name or use their own builders. Every invariant
//! is asserted at parse time and violations carry the item name and the
//! offending simplex.

use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;

use crate::builders;
use crate::cw::CwComplex;
use crate::delta::{DeltaComplex, ExcisiveSquare, SimplexImage, SimplicialMap, SubcomplexPair};
use crate::error::CorpusError;
use crate::filtration::Filtration;
use crate::matrix::IntMatrix;
use crate::module::FgModule;
use crate::poset::FinitePoset;
use crate::ring::RingSpec;

/// A parsed, validated corpus.
#[derive(Debug, Clone)]
pub struct CorpusFile {
    pub format_version: u32,
    pub items: Vec<CorpusItem>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct CorpusItem {
    pub name: String,
    pub object: CorpusObject,
}

#[derive(Debug, Clone)]
pub enum CorpusObject {
    Space(DeltaComplex),
    Cells(CwComplex),
    Poset(FinitePoset),
    Pair(SubcomplexPair),
    Cover(ExcisiveSquare),
    Filt(Filtration),
    Map(SimplicialMap),
}

impl CorpusObject {
    pub fn kind(&self) -> &'static str {
        match self {
            CorpusObject::Space(_) => "delta_complex",
            CorpusObject::Cells(_) => "cw_complex",
            CorpusObject::Poset(_) => "poset",
            CorpusObject::Pair(_) => "pair",
            CorpusObject::Cover(_) => "cover",
            CorpusObject::Filt(_) => "filtration",
            CorpusObject::Map(_) => "map",
        }
    }
}

impl CorpusFile {
    pub fn find(&self, name: &str) -> Result<&CorpusObject, CorpusError> {
        self.items
            .iter()
            .find(|item| item.name == name)
            .map(|item| &item.object)
            .ok_or_else(|| CorpusError::UnknownItem(name.to_string()))
    }
}

#[derive(Debug, Deserialize)]
struct RawCorpus {
    format_version: u32,
    items: Vec<RawItem>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawItem {
    DeltaComplex {
        name: String,
        #[serde(default)]
        builder: Option<String>,
        #[serde(default)]
        counts: Option<Vec<usize>>,
        #[serde(default)]
        faces: Option<Vec<Vec<Vec<usize>>>>,
    },
    CwComplex {
        name: String,
        cell_counts: Vec<usize>,
        incidence: Vec<Vec<Vec<i64>>>,
    },
    Poset {
        name: String,
        #[serde(default)]
        builder: Option<String>,
        #[serde(default)]
        elements: Vec<String>,
        #[serde(default)]
        relations: Vec<(String, String)>,
    },
    Pair {
        name: String,
        #[serde(default)]
        builder: Option<String>,
        #[serde(default)]
        total: Option<String>,
        #[serde(default)]
        flags: Option<Vec<Vec<bool>>>,
    },
    Cover {
        name: String,
        #[serde(default)]
        builder: Option<String>,
        #[serde(default)]
        total: Option<String>,
        #[serde(default)]
        u: Option<Vec<Vec<bool>>>,
        #[serde(default)]
        v: Option<Vec<Vec<bool>>>,
    },
    Filtration {
        name: String,
        total: String,
        #[serde(default)]
        skeletal: bool,
        #[serde(default)]
        stages: Option<Vec<Vec<Vec<bool>>>>,
    },
    Map {
        name: String,
        #[serde(default)]
        builder: Option<String>,
        #[serde(default)]
        source: Option<String>,
        #[serde(default)]
        target: Option<String>,
        /// per dimension, per simplex: an index or null for a collapse
        #[serde(default)]
        images: Option<Vec<Vec<Option<usize>>>>,
    },
}

impl RawItem {
    fn name(&self) -> &str {
        match self {
            RawItem::DeltaComplex { name, .. }
            | RawItem::CwComplex { name, .. }
            | RawItem::Poset { name, .. }
            | RawItem::Pair { name, .. }
            | RawItem::Cover { name, .. }
            | RawItem::Filtration { name, .. }
            | RawItem::Map { name, .. } => name,
        }
    }
}

/// Reads and fully validates a corpus file.
pub fn parse_corpus(path: impl AsRef<Path>) -> Result<CorpusFile, CorpusError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_corpus_str(&text, &path.display().to_string())
}

/// Parses corpus JSON from a string (the file path is only for messages).
pub fn parse_corpus_str(text: &str, path: &str) -> Result<CorpusFile, CorpusError> {
    let raw: RawCorpus = serde_json::from_str(text).map_err(|source| CorpusError::Json {
        path: path.to_string(),
        source,
    })?;
    if raw.format_version != 1 {
        return Err(CorpusError::FormatVersion(raw.format_version));
    }
    let mut seen: HashMap<String, ()> = HashMap::new();
    for item in &raw.items {
        if seen.insert(item.name().to_string(), ()).is_some() {
            return Err(CorpusError::DuplicateName(item.name().to_string()));
        }
    }

    // first pass: everything that does not reference other items
    let mut spaces: HashMap<String, DeltaComplex> = HashMap::new();
    for item in &raw.items {
        if let RawItem::DeltaComplex {
            name,
            builder,
            counts,
            faces,
        } = item
        {
            let space = match (builder, counts, faces) {
                (Some(spec), None, None) => build_space(name, spec)?,
                (None, Some(counts), Some(faces)) => {
                    DeltaComplex::new(counts.clone(), faces.clone()).map_err(|source| {
                        CorpusError::InvalidItem {
                            item: name.clone(),
                            source,
                        }
                    })?
                }
                _ => {
                    return Err(CorpusError::UnknownBuilder {
                        item: name.clone(),
                        builder: "expected either a builder or counts + faces".into(),
                    })
                }
            };
            spaces.insert(name.clone(), space);
        }
    }

    let fetch_space = |item: &str, reference: &str| -> Result<DeltaComplex, CorpusError> {
        spaces.get(reference).cloned().ok_or_else(|| {
            if raw.items.iter().any(|r| r.name() == reference) {
                CorpusError::WrongKind {
                    item: item.to_string(),
                    reference: reference.to_string(),
                    expected: "delta_complex".into(),
                    found: "other".into(),
                }
            } else {
                CorpusError::DanglingReference {
                    item: item.to_string(),
                    reference: reference.to_string(),
                }
            }
        })
    };

    let mut items = Vec::with_capacity(raw.items.len());
    for item in &raw.items {
        let name = item.name().to_string();
        let object = match item {
            RawItem::DeltaComplex { name, .. } => CorpusObject::Space(spaces[name].clone()),
            RawItem::CwComplex {
                name,
                cell_counts,
                incidence,
            } => {
                let matrices: Vec<IntMatrix> =
                    incidence.iter().map(|m| IntMatrix::from_rows(m)).collect();
                let cw = CwComplex::new(cell_counts.clone(), matrices).map_err(|source| {
                    CorpusError::InvalidItem {
                        item: name.clone(),
                        source,
                    }
                })?;
                CorpusObject::Cells(cw)
            }
            RawItem::Poset {
                name,
                builder,
                elements,
                relations,
            } => {
                let poset = match builder {
                    Some(spec) if spec == "pseudocircle" => builders::pseudocircle_poset(),
                    Some(spec) => {
                        return Err(CorpusError::UnknownBuilder {
                            item: name.clone(),
                            builder: spec.clone(),
                        })
                    }
                    None => FinitePoset::new(elements.clone(), relations).map_err(|source| {
                        CorpusError::InvalidItem {
                            item: name.clone(),
                            source,
                        }
                    })?,
                };
                CorpusObject::Poset(poset)
            }
            RawItem::Pair {
                name,
                builder,
                total,
                flags,
            } => {
                let pair = match (builder, total, flags) {
                    (Some(spec), None, None) => build_pair(name, spec)?,
                    (None, Some(total), Some(flags)) => {
                        let space = fetch_space(name, total)?;
                        SubcomplexPair::new(space, flags.clone()).map_err(|source| {
                            CorpusError::InvalidItem {
                                item: name.clone(),
                                source,
                            }
                        })?
                    }
                    _ => {
                        return Err(CorpusError::UnknownBuilder {
                            item: name.clone(),
                            builder: "expected either a builder or total + flags".into(),
                        })
                    }
                };
                CorpusObject::Pair(pair)
            }
            RawItem::Cover {
                name,
                builder,
                total,
                u,
                v,
            } => {
                let cover = match (builder, total, u, v) {
                    (Some(spec), None, None, None) => build_cover(name, spec)?,
                    (None, Some(total), Some(u), Some(v)) => {
                        let space = fetch_space(name, total)?;
                        ExcisiveSquare::new(space, u.clone(), v.clone()).map_err(|source| {
                            CorpusError::InvalidItem {
                                item: name.clone(),
                                source,
                            }
                        })?
                    }
                    _ => {
                        return Err(CorpusError::UnknownBuilder {
                            item: name.clone(),
                            builder: "expected either a builder or total + u + v".into(),
                        })
                    }
                };
                CorpusObject::Cover(cover)
            }
            RawItem::Filtration {
                name,
                total,
                skeletal,
                stages,
            } => {
                let space = fetch_space(name, total)?;
                let filtration = match (skeletal, stages) {
                    (true, None) => Filtration::skeletal(&space),
                    (false, Some(stages)) => {
                        Filtration::new(space, stages.clone()).map_err(|source| {
                            CorpusError::InvalidItem {
                                item: name.clone(),
                                source,
                            }
                        })?
                    }
                    _ => {
                        return Err(CorpusError::UnknownBuilder {
                            item: name.clone(),
                            builder: "expected skeletal: true or explicit stages".into(),
                        })
                    }
                };
                CorpusObject::Filt(filtration)
            }
            RawItem::Map {
                name,
                builder,
                source,
                target,
                images,
            } => {
                let map = match (builder, source, target, images) {
                    (Some(spec), None, None, None) => build_map(name, spec)?,
                    (None, Some(source), Some(target), Some(images)) => {
                        let src = fetch_space(name, source)?;
                        let tgt = fetch_space(name, target)?;
                        let images: Vec<Vec<SimplexImage>> = images
                            .iter()
                            .map(|row| {
                                row.iter()
                                    .map(|entry| match entry {
                                        Some(t) => SimplexImage::Simplex(*t),
                                        None => SimplexImage::Collapsed,
                                    })
                                    .collect()
                            })
                            .collect();
                        SimplicialMap::new(src, tgt, images).map_err(|source| {
                            CorpusError::InvalidItem {
                                item: name.clone(),
                                source,
                            }
                        })?
                    }
                    _ => {
                        return Err(CorpusError::UnknownBuilder {
                            item: name.clone(),
                            builder: "expected either a builder or source + target + images".into(),
                        })
                    }
                };
                CorpusObject::Map(map)
            }
        };
        items.push(CorpusItem { name, object });
    }

    let mut warnings = Vec::new();
    if items.is_empty() {
        warnings.push("corpus has an empty item list".to_string());
    }
    Ok(CorpusFile {
        format_version: raw.format_version,
        items,
        warnings,
    })
}

fn build_space(item: &str, spec: &str) -> Result<DeltaComplex, CorpusError> {
    let unknown = || CorpusError::UnknownBuilder {
        item: item.to_string(),
        builder: spec.to_string(),
    };
    match spec {
        "point" => return Ok(DeltaComplex::point()),
        "torus" => return Ok(builders::torus_delta()),
        "rp2" => return Ok(builders::rp2_delta()),
        "klein" => return Ok(builders::klein_delta()),
        _ => {}
    }
    if let Some(n) = spec.strip_prefix("sphere:") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        return Ok(builders::sphere_delta(n));
    }
    if let Some(n) = spec.strip_prefix("simplex:") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        return Ok(builders::simplex_delta(n));
    }
    if let Some(m) = spec.strip_prefix("circle:") {
        let m: usize = m.parse().map_err(|_| unknown())?;
        return builders::circle_mgon(m).map_err(|source| CorpusError::InvalidItem {
            item: item.to_string(),
            source,
        });
    }
    Err(unknown())
}

fn build_pair(item: &str, spec: &str) -> Result<SubcomplexPair, CorpusError> {
    if let Some(n) = spec.strip_prefix("disk:") {
        let n: usize = n.parse().map_err(|_| CorpusError::UnknownBuilder {
            item: item.to_string(),
            builder: spec.to_string(),
        })?;
        return Ok(builders::disk_pair(n));
    }
    Err(CorpusError::UnknownBuilder {
        item: item.to_string(),
        builder: spec.to_string(),
    })
}

fn build_cover(item: &str, spec: &str) -> Result<ExcisiveSquare, CorpusError> {
    match spec {
        "circle-arcs" => return Ok(builders::circle_arc_cover()),
        "sphere-disks" => return Ok(builders::sphere_disk_cover()),
        "torus-patches" => return Ok(builders::torus_patch_cover()),
        _ => {}
    }
    if let Some(half) = spec.strip_prefix("circle-alternating:") {
        let half: usize = half.parse().map_err(|_| CorpusError::UnknownBuilder {
            item: item.to_string(),
            builder: spec.to_string(),
        })?;
        return builders::mgon_alternating_cover(half).map_err(|source| CorpusError::InvalidItem {
            item: item.to_string(),
            source,
        });
    }
    Err(CorpusError::UnknownBuilder {
        item: item.to_string(),
        builder: spec.to_string(),
    })
}

fn build_map(item: &str, spec: &str) -> Result<SimplicialMap, CorpusError> {
    let unknown = || CorpusError::UnknownBuilder {
        item: item.to_string(),
        builder: spec.to_string(),
    };
    if let Some(rest) = spec.strip_prefix("wrap:") {
        let (k, m) = rest.split_once(':').ok_or_else(unknown)?;
        let k: usize = k.parse().map_err(|_| unknown())?;
        let m: usize = m.parse().map_err(|_| unknown())?;
        return builders::wrap_map(k, m).map_err(|source| CorpusError::InvalidItem {
            item: item.to_string(),
            source,
        });
    }
    Err(unknown())
}

/// Parses the coefficient-module mini-grammar over `Z`: `Z`, `Z/6`,
/// `Z^2+Z/2+Z/4` (free rank plus cyclic summands, normalized to a chain).
pub fn parse_module_spec(text: &str) -> Result<FgModule, CorpusError> {
    let mut free_rank = 0usize;
    let mut torsion: Vec<num_bigint::BigInt> = Vec::new();
    for term in text.split('+') {
        let term = term.trim();
        if term == "Z" {
            free_rank += 1;
        } else if let Some(k) = term.strip_prefix("Z^") {
            let k: usize = k
                .parse()
                .map_err(|_| CorpusError::ModuleSpec(text.to_string()))?;
            free_rank += k;
        } else if let Some(m) = term.strip_prefix("Z/") {
            let m: u64 = m
                .parse()
                .map_err(|_| CorpusError::ModuleSpec(text.to_string()))?;
            if m < 2 {
                return Err(CorpusError::ModuleSpec(text.to_string()));
            }
            torsion.push(num_bigint::BigInt::from(m));
        } else {
            return Err(CorpusError::ModuleSpec(text.to_string()));
        }
    }
    crate::module::normalize_chain(&mut torsion);
    FgModule::new(RingSpec::Integers, free_rank, torsion)
        .map_err(|_| CorpusError::ModuleSpec(text.to_string()))
}
