//! JSON files for fusion and module categories.
//!
//! Labels are strings everywhere. Symbols are sparse records; an absent
//! record inside an admissible block is zero. Saving writes every nonzero
//! entry in block and tree order, so `save` of a loaded file is canonical.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::category::data::{FusionCategoryData, ModuleCategoryData};
use crate::category::ring::{validate_fusion_ring, validate_module_fusion, FusionRing, ModuleFusion};
use crate::category::symbols::{BlockKey, Tree};
use crate::error::{Error, Result, Rule, ValidationReport};
use crate::linalg::C64;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionRecord {
    pub a: String,
    pub b: String,
    pub c: String,
    pub n: u32,
}

/// One F-symbol `F^{abc}_d[(alpha, e, beta), (mu, f, nu)]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FRecord {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub alpha: usize,
    pub e: String,
    pub beta: usize,
    pub mu: usize,
    pub f: String,
    pub nu: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub version: u32,
    pub labels: Vec<String>,
    pub unit: String,
    pub fusion: Vec<FusionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duals: Option<BTreeMap<String, String>>,
    pub f: Vec<FRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitary: Option<bool>,
}

/// `N^n_{a m}`: object `a` acting on module object `m` contains `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionRecord {
    pub a: String,
    pub m: String,
    pub n: String,
    pub count: u32,
}

/// One L-symbol `L^{abm}_n[(alpha, e, beta), (mu, p, nu)]`; `m, n, p` are
/// module labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LRecord {
    pub a: String,
    pub b: String,
    pub m: String,
    pub n: String,
    pub alpha: usize,
    pub e: String,
    pub beta: usize,
    pub mu: usize,
    pub p: String,
    pub nu: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub version: u32,
    pub labels: Vec<String>,
    pub action: Vec<ActionRecord>,
    pub l: Vec<LRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<f64>>,
}

fn lookup(names: &BTreeMap<&str, usize>, name: &str, what: &str) -> Result<usize> {
    names.get(name).copied().ok_or_else(|| Error::Malformed(format!("unknown {what} label '{name}'")))
}

fn index(labels: &[String]) -> BTreeMap<&str, usize> {
    labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(Error::Unsupported(format!("file format version {v}; this build reads version {FORMAT_VERSION}")));
    }
    Ok(())
}

impl CategoryFile {
    pub fn from_data(cat: &FusionCategoryData) -> Self {
        let ring = cat.ring();
        let l = |i: usize| ring.label(i).to_string();
        let fusion = ring.triples().into_iter().map(|(a, b, c, n)| FusionRecord { a: l(a), b: l(b), c: l(c), n }).collect();
        let duals = (0..ring.rank()).filter_map(|a| ring.dual(a).map(|d| (l(a), l(d)))).collect();
        let f = cat
            .symbols()
            .entries(0.0)
            .into_iter()
            .map(|([a, b, c, d], left, right, v)| FRecord {
                a: l(a),
                b: l(b),
                c: l(c),
                d: l(d),
                alpha: left.first,
                e: l(left.mid),
                beta: left.second,
                mu: right.first,
                f: l(right.mid),
                nu: right.second,
                re: v.re,
                im: v.im,
            })
            .collect();
        CategoryFile {
            version: FORMAT_VERSION,
            labels: ring.labels().to_vec(),
            unit: l(ring.unit()),
            fusion,
            duals: Some(duals),
            f,
            dims: Some(cat.dims().to_vec()),
            unitary: Some(cat.is_unitary()),
        }
    }

    /// Builds the data; runs every validator when `validate` carries a
    /// residual tolerance.
    pub fn to_data(&self, validate: Option<f64>) -> Result<FusionCategoryData> {
        check_version(self.version)?;
        let names = index(&self.labels);
        let unit = lookup(&names, &self.unit, "unit")?;
        let triples = self
            .fusion
            .iter()
            .map(|r| Ok((lookup(&names, &r.a, "fusion")?, lookup(&names, &r.b, "fusion")?, lookup(&names, &r.c, "fusion")?, r.n)))
            .collect::<Result<Vec<_>>>()?;
        let ring = FusionRing::new(self.labels.clone(), unit, &triples)?;
        if validate.is_some() {
            let mut rep = validate_fusion_ring(&ring);
            if let Some(duals) = &self.duals {
                for (a, d) in duals {
                    let (ai, di) = (lookup(&names, a, "dual")?, lookup(&names, d, "dual")?);
                    if ring.dual(ai) != Some(di) {
                        rep.push(Rule::Duals, format!("file lists {d} as dual of {a}, fusion rules disagree"));
                    }
                }
            }
            rep.into_result()?;
        }
        let entries = self
            .f
            .iter()
            .map(|r| {
                let key: BlockKey = [
                    lookup(&names, &r.a, "F")?,
                    lookup(&names, &r.b, "F")?,
                    lookup(&names, &r.c, "F")?,
                    lookup(&names, &r.d, "F")?,
                ];
                let left = Tree::new(r.alpha, lookup(&names, &r.e, "F")?, r.beta);
                let right = Tree::new(r.mu, lookup(&names, &r.f, "F")?, r.nu);
                Ok((key, left, right, C64::new(r.re, r.im)))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut cat = FusionCategoryData::from_entries(ring, &entries, self.dims.clone())?;
        if let Some(flag) = self.unitary {
            if flag && !cat.is_unitary() && validate.is_some() {
                let mut rep = ValidationReport::default();
                rep.push(Rule::Unitarity, "file claims a unitary gauge but some F-block is not unitary");
                rep.into_result()?;
            }
            let detected = cat.is_unitary();
            cat = cat.with_unitary(flag && detected);
        }
        if let Some(tol) = validate {
            cat.validate(tol).into_result()?;
        }
        Ok(cat)
    }
}

impl ModuleFile {
    pub fn from_data(cat: &FusionCategoryData, module: &ModuleCategoryData) -> Self {
        let ring = cat.ring();
        let fusion = module.fusion();
        let c = |i: usize| ring.label(i).to_string();
        let m = |i: usize| fusion.label(i).to_string();
        let action =
            fusion.triples().into_iter().map(|(a, x, y, count)| ActionRecord { a: c(a), m: m(x), n: m(y), count }).collect();
        let l = module
            .symbols()
            .entries(0.0)
            .into_iter()
            .map(|([a, b, x, y], left, right, v)| LRecord {
                a: c(a),
                b: c(b),
                m: m(x),
                n: m(y),
                alpha: left.first,
                e: c(left.mid),
                beta: left.second,
                mu: right.first,
                p: m(right.mid),
                nu: right.second,
                re: v.re,
                im: v.im,
            })
            .collect();
        ModuleFile { version: FORMAT_VERSION, labels: fusion.labels().to_vec(), action, l, dims: Some(module.dims().to_vec()) }
    }

    pub fn to_data(&self, cat: &FusionCategoryData, validate: Option<f64>) -> Result<ModuleCategoryData> {
        check_version(self.version)?;
        let cnames = index(cat.ring().labels());
        let mnames = index(&self.labels);
        let triples = self
            .action
            .iter()
            .map(|r| Ok((lookup(&cnames, &r.a, "category")?, lookup(&mnames, &r.m, "module")?, lookup(&mnames, &r.n, "module")?, r.count)))
            .collect::<Result<Vec<_>>>()?;
        let fusion = ModuleFusion::new(self.labels.clone(), cat.rank(), &triples)?;
        if validate.is_some() {
            validate_module_fusion(cat.ring(), &fusion).into_result()?;
        }
        let entries = self
            .l
            .iter()
            .map(|r| {
                let key: BlockKey = [
                    lookup(&cnames, &r.a, "category")?,
                    lookup(&cnames, &r.b, "category")?,
                    lookup(&mnames, &r.m, "module")?,
                    lookup(&mnames, &r.n, "module")?,
                ];
                let left = Tree::new(r.alpha, lookup(&cnames, &r.e, "category")?, r.beta);
                let right = Tree::new(r.mu, lookup(&mnames, &r.p, "module")?, r.nu);
                Ok((key, left, right, C64::new(r.re, r.im)))
            })
            .collect::<Result<Vec<_>>>()?;
        let module = ModuleCategoryData::from_entries(cat, fusion, &entries, self.dims.clone())?;
        if let Some(tol) = validate {
            module.validate(cat, tol).into_result()?;
        }
        Ok(module)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|source| Error::Parse { path: path.display().to_string(), source })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file records serialize");
    s.push('\n');
    s
}

pub fn load_category(path: impl AsRef<Path>, validate: Option<f64>) -> Result<FusionCategoryData> {
    let path = path.as_ref();
    let file: CategoryFile = parse(path, &read(path)?)?;
    file.to_data(validate)
}

pub fn save_category(cat: &FusionCategoryData, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &to_json(&CategoryFile::from_data(cat)))
}

pub fn load_module(path: impl AsRef<Path>, cat: &FusionCategoryData, validate: Option<f64>) -> Result<ModuleCategoryData> {
    let path = path.as_ref();
    let file: ModuleFile = parse(path, &read(path)?)?;
    file.to_data(cat, validate)
}

pub fn save_module(cat: &FusionCategoryData, module: &ModuleCategoryData, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &to_json(&ModuleFile::from_data(cat, module)))
}
