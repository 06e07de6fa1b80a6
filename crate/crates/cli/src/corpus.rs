//! Corpus management: generating the bundled table/fusion/registry files and
//! ingesting (with full validation) a corpus directory.
//!
//! Layout:
//!   <dir>/tables/<name>.json    character tables
//!   <dir>/fusions/<src>_<tgt>.json
//!   <dir>/registry.json         field realizations for the wreath pipeline
//!   <dir>/meta.json             expected-fail annotations

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use charfield_core::chartab::generate::{cyclic, dicyclic, dihedral, direct_product, sl2_3};
use charfield_core::chartab::{checks, CharacterTable, FusionMap};
use charfield_core::numfield::AbelianField;
use charfield_core::symchar::{alternating_fusion, alternating_table, symmetric_table};
use charfield_core::wreath::{Registry, RegistryEntry};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ExpectedFail {
    pub group: String,
    pub char_index: usize,
    pub check: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CorpusMeta {
    pub expected_fail: Vec<ExpectedFail>,
}

pub struct Corpus {
    pub tables: BTreeMap<String, CharacterTable>,
    pub fusions: Vec<FusionMap>,
    pub registry: Registry,
    pub meta: CorpusMeta,
}

impl Corpus {
    pub fn table(&self, name: &str) -> anyhow::Result<&CharacterTable> {
        self.tables
            .get(name)
            .with_context(|| format!("corpus has no table named {name}"))
    }

    pub fn is_expected_fail(&self, group: &str, char_index: usize, check: &str) -> bool {
        self.meta
            .expected_fail
            .iter()
            .any(|e| e.group == group && e.char_index == char_index && e.check == check)
    }

    pub fn tables_map(&self) -> std::collections::HashMap<String, CharacterTable> {
        self.tables
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}

/// Builds the full bundled corpus in memory.
pub fn generate() -> anyhow::Result<Corpus> {
    let mut tables: BTreeMap<String, CharacterTable> = BTreeMap::new();
    let mut add = |t: CharacterTable| {
        tables.insert(t.name.clone(), t);
    };

    for n in 1..=24 {
        add(cyclic(n));
    }
    for order in (4..=32).step_by(2) {
        add(dihedral(order));
    }
    for order in (8..=32).step_by(4) {
        add(dicyclic(order));
    }
    for n in 2..=8 {
        add(symmetric_table(n));
    }
    for n in 3..=8 {
        add(alternating_table(n));
    }
    add(sl2_3());
    // direct products used in the composition pipelines
    let s3 = symmetric_table(3);
    add(direct_product(&cyclic(5), &s3));
    add(direct_product(&s3, &s3));

    let fusions: Vec<FusionMap> = (3..=8).map(alternating_fusion).collect();
    for f in &fusions {
        f.validate(&tables[&f.source], &tables[&f.target])
            .map_err(|e| anyhow::anyhow!("{e}"))?;
    }

    // registry: cyclotomic fields through the faithful characters of the
    // cyclic tables (one entry per distinct field, smallest group first),
    // plus rational degree-p seeds for tensor blocks
    let mut entries = Vec::new();
    let mut covered: Vec<AbelianField> = Vec::new();
    for n in 1..=24u64 {
        let name = format!("C{n}");
        let idx = if n == 1 { 0 } else { 1 };
        let field = tables[&name].field_of_values(idx);
        if covered.contains(&field) {
            continue;
        }
        covered.push(field.clone());
        entries.push(RegistryEntry { field, table: name, char_index: idx });
    }
    for (name, degree) in [("S3", 2u64), ("S4", 3), ("A5", 5)] {
        let t = &tables[name];
        let idx = (0..t.char_count())
            .find(|&i| t.degree(i) == degree && t.field_of_values(i) == AbelianField::rationals())
            .with_context(|| format!("{name} must have a rational degree-{degree} character"))?;
        entries.push(RegistryEntry {
            field: AbelianField::rationals(),
            table: name.to_string(),
            char_index: idx,
        });
    }
    let registry = Registry { entries };

    // expected failures of the cram-degree strengthening: it holds for
    // solvable groups, and the alternating tables supply the counterexamples
    let mut expected_fail = Vec::new();
    for (name, t) in &tables {
        if !name.starts_with('A') || !name[1..].chars().all(|c| c.is_ascii_digit()) {
            continue;
        }
        for i in 0..t.char_count() {
            let rec = checks::check_cram_not_degree(t, i);
            if !rec.verdict {
                expected_fail.push(ExpectedFail {
                    group: name.clone(),
                    char_index: i,
                    check: "cram-degree".into(),
                });
            }
        }
    }

    Ok(Corpus { tables, fusions, registry, meta: CorpusMeta { expected_fail } })
}

/// Writes a generated corpus to disk.
pub fn write_to(dir: &Path, corpus: &Corpus) -> anyhow::Result<()> {
    let tables_dir = dir.join("tables");
    let fusions_dir = dir.join("fusions");
    std::fs::create_dir_all(&tables_dir)?;
    std::fs::create_dir_all(&fusions_dir)?;
    for (name, t) in &corpus.tables {
        let path = tables_dir.join(format!("{}.json", sanitize(name)));
        std::fs::write(&path, t.save())?;
    }
    for f in &corpus.fusions {
        let path = fusions_dir.join(format!("{}_{}.json", sanitize(&f.source), sanitize(&f.target)));
        let mut bytes = serde_json::to_vec_pretty(&f.to_json())?;
        bytes.push(b'\n');
        std::fs::write(&path, bytes)?;
    }
    let mut bytes = serde_json::to_vec_pretty(&corpus.registry.to_json())?;
    bytes.push(b'\n');
    std::fs::write(dir.join("registry.json"), bytes)?;
    let mut bytes = serde_json::to_vec_pretty(&corpus.meta)?;
    bytes.push(b'\n');
    std::fs::write(dir.join("meta.json"), bytes)?;
    Ok(())
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

/// Loads and fully validates a corpus directory; the error names the file
/// and the violated invariant.
pub fn ingest(dir: &Path) -> anyhow::Result<Corpus> {
    let tables_dir = dir.join("tables");
    if !tables_dir.is_dir() {
        bail!("corpus directory {} has no tables/ subdirectory", dir.display());
    }
    let mut tables = BTreeMap::new();
    let mut table_files: Vec<_> = std::fs::read_dir(&tables_dir)?
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    table_files.sort();
    for path in table_files {
        let bytes = std::fs::read(&path)?;
        let t = CharacterTable::load(&bytes)
            .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        if tables.insert(t.name.clone(), t).is_some() {
            bail!("{}: duplicate table name", path.display());
        }
    }

    let mut fusions = Vec::new();
    let fusions_dir = dir.join("fusions");
    if fusions_dir.is_dir() {
        let mut fusion_files: Vec<_> = std::fs::read_dir(&fusions_dir)?
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        fusion_files.sort();
        for path in fusion_files {
            let bytes = std::fs::read(&path)?;
            let f = FusionMap::load(&bytes)
                .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
            let (src, tgt) = (
                tables
                    .get(&f.source)
                    .with_context(|| format!("{}: unknown source table", path.display()))?,
                tables
                    .get(&f.target)
                    .with_context(|| format!("{}: unknown target table", path.display()))?,
            );
            f.validate(src, tgt)
                .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
            fusions.push(f);
        }
    }

    let registry_path = dir.join("registry.json");
    let registry = if registry_path.is_file() {
        let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&registry_path)?)?;
        Registry::from_json(&v).map_err(|e| anyhow::anyhow!("{}: {e}", registry_path.display()))?
    } else {
        Registry::default()
    };
    for entry in &registry.entries {
        let t = tables
            .get(&entry.table)
            .with_context(|| format!("registry references unknown table {}", entry.table))?;
        anyhow::ensure!(
            entry.char_index < t.char_count()
                && t.field_of_values(entry.char_index) == entry.field,
            "registry entry ({}, {}) does not realize its declared field",
            entry.table,
            entry.char_index
        );
    }

    let meta_path = dir.join("meta.json");
    let meta = if meta_path.is_file() {
        serde_json::from_slice(&std::fs::read(&meta_path)?)?
    } else {
        CorpusMeta::default()
    };

    Ok(Corpus { tables, fusions, registry, meta })
}
