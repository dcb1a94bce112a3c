//! Python bindings: `import ulam_words`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use pyo3::exceptions::{PyKeyError, PyMemoryError, PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ulam::{io, patterns, stats, UlamError};

fn err(e: UlamError) -> PyErr {
    let msg = e.to_string();
    match e {
        UlamError::State(_) => PyRuntimeError::new_err(msg),
        UlamError::Resource { .. } => PyMemoryError::new_err(msg),
        UlamError::Io { .. } => PyOSError::new_err(msg),
        _ => PyValueError::new_err(msg),
    }
}

/// A binary word, written as a string of `0`s and `1`s.
#[pyclass(frozen, eq, ord, hash, from_py_object, module = "ulam_words")]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(ulam::Word);

#[pymethods]
impl Word {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Word).map_err(err)
    }

    #[staticmethod]
    fn from_code(length: u32, value: u64) -> PyResult<Self> {
        ulam::Word::decode(length, value).map(Word).map_err(err)
    }

    /// Builds a word from `(letter, run_length)` pairs.
    #[staticmethod]
    fn from_runs(runs: Vec<(bool, u32)>) -> PyResult<Self> {
        ulam::Word::from_runs(&runs).map(Word).map_err(err)
    }

    #[getter]
    fn length(&self) -> u32 {
        self.0.len()
    }

    #[getter]
    fn value(&self) -> u64 {
        self.0.value()
    }

    fn ones(&self) -> u32 {
        self.0.ones()
    }

    fn letters(&self) -> Vec<bool> {
        self.0.letters().collect()
    }

    fn complement(&self) -> Self {
        Word(self.0.complement())
    }

    fn reverse(&self) -> Self {
        Word(self.0.reverse())
    }

    fn concat(&self, other: &Word) -> PyResult<Self> {
        self.0.concat(&other.0).map(Word).map_err(err)
    }

    fn prefix(&self, k: u32) -> PyResult<Self> {
        self.check_cut(k)?;
        Ok(Word(self.0.prefix(k)))
    }

    fn suffix(&self, k: u32) -> PyResult<Self> {
        self.check_cut(k)?;
        Ok(Word(self.0.suffix(k)))
    }

    fn __add__(&self, other: &Word) -> PyResult<Self> {
        self.concat(other)
    }

    fn __len__(&self) -> usize {
        self.0.len() as usize
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}')", self.0)
    }
}

impl Word {
    fn check_cut(&self, k: u32) -> PyResult<()> {
        if k == 0 || k > self.0.len() {
            return Err(PyValueError::new_err(format!(
                "cut {k} outside 1..={} for a word of length {}",
                self.0.len(),
                self.0.len()
            )));
        }
        Ok(())
    }
}

/// Either a `Word` or its string form.
#[derive(FromPyObject)]
enum WordLike {
    Word(Word),
    Text(String),
}

impl WordLike {
    fn into_word(self) -> PyResult<ulam::Word> {
        match self {
            WordLike::Word(w) => Ok(w.0),
            WordLike::Text(s) => s.parse().map_err(err),
        }
    }
}

/// All Ulam words of one length.
#[pyclass(frozen, skip_from_py_object, module = "ulam_words")]
#[derive(Clone)]
pub struct LevelSet(ulam::LevelSet);

#[pymethods]
impl LevelSet {
    #[getter]
    fn length(&self) -> u32 {
        self.0.length()
    }

    #[getter]
    fn count(&self) -> u64 {
        self.0.count()
    }

    /// Sorted integer codes of the members.
    fn codes(&self) -> Vec<u64> {
        self.0.codes().collect()
    }

    fn words(&self) -> Vec<Word> {
        self.0.words().map(Word).collect()
    }

    fn __len__(&self) -> usize {
        self.0.count() as usize
    }

    fn __contains__(&self, word: WordLike) -> PyResult<bool> {
        Ok(self.0.contains_word(&word.into_word()?))
    }

    fn __repr__(&self) -> String {
        format!(
            "LevelSet(length={}, count={})",
            self.0.length(),
            self.0.count()
        )
    }
}

/// Levels `1..=max_length` of the Ulam words.
#[pyclass(module = "ulam_words")]
pub struct UlamTable(ulam::UlamTable);

impl UlamTable {
    fn get(&self, n: u32) -> PyResult<&ulam::LevelSet> {
        self.0.level(n).ok_or_else(|| {
            PyKeyError::new_err(format!("level {n} not in 1..={}", self.0.max_length()))
        })
    }
}

#[pymethods]
impl UlamTable {
    #[new]
    #[pyo3(signature = (max_length = 24, memory_budget = None))]
    fn new(py: Python<'_>, max_length: u32, memory_budget: Option<u64>) -> PyResult<Self> {
        let budget = memory_budget.unwrap_or(ulam::engine::DEFAULT_MEMORY_BUDGET);
        py.detach(|| {
            let mut table = ulam::UlamTable::new().with_memory_budget(budget);
            table.extend_to(max_length).map(|_| table)
        })
        .map(UlamTable)
        .map_err(err)
    }

    /// Loads every `level_NN.ulmw` file from a directory.
    #[staticmethod]
    fn load(dir: PathBuf) -> PyResult<Self> {
        let levels = io::load_store(&dir).map_err(err)?;
        ulam::UlamTable::from_levels(levels)
            .map(UlamTable)
            .map_err(err)
    }

    fn save(&self, dir: PathBuf) -> PyResult<()> {
        io::save_store(self.0.levels(), &dir).map_err(err)
    }

    fn extend_to(&mut self, py: Python<'_>, max_length: u32) -> PyResult<()> {
        let table = &mut self.0;
        py.detach(|| table.extend_to(max_length)).map_err(err)
    }

    #[getter]
    fn max_length(&self) -> u32 {
        self.0.max_length()
    }

    fn level(&self, n: u32) -> PyResult<LevelSet> {
        self.get(n).cloned().map(LevelSet)
    }

    fn count(&self, n: u32) -> PyResult<u64> {
        self.get(n).map(|l| l.count())
    }

    fn counts(&self) -> BTreeMap<u32, u64> {
        self.0.counts().into_iter().collect()
    }

    fn members(&self, n: u32) -> PyResult<Vec<String>> {
        Ok(self.get(n)?.words().map(|w| w.to_string()).collect())
    }

    fn is_ulam(&self, word: WordLike) -> PyResult<bool> {
        self.0.is_ulam(&word.into_word()?).map_err(err)
    }

    /// Number of ways to split the word into two distinct shorter Ulam
    /// words, capped at 2.
    fn representation_count(&self, word: WordLike) -> PyResult<u32> {
        self.0.representation_count(&word.into_word()?).map_err(err)
    }

    /// Writes every CSV report into `dir` and returns the paths.
    fn export_reports(&self, dir: PathBuf) -> PyResult<Vec<PathBuf>> {
        io::export_reports(&self.0, dir).map_err(err)
    }

    /// Counterexamples `(a, b, length, is_ulam)` to the `0^a 1^(2^k) 0^b` rule.
    fn check_power_conjecture(&self, k: u32) -> PyResult<Vec<(u32, u32, u32, bool)>> {
        let found = patterns::check_power_conjecture(&self.0, k).map_err(err)?;
        Ok(found
            .into_iter()
            .map(|c| (c.a, c.b, c.length, c.engine_says_ulam))
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("UlamTable(max_length={})", self.0.max_length())
    }
}

/// Gap summary for one level.
#[pyclass(frozen, module = "ulam_words")]
pub struct GapStats(stats::GapStats);

#[pymethods]
impl GapStats {
    #[getter]
    fn length(&self) -> u32 {
        self.0.length()
    }

    #[getter]
    fn mean(&self) -> f64 {
        self.0.mean()
    }

    #[getter]
    fn stddev(&self) -> f64 {
        self.0.stddev()
    }

    #[getter]
    fn max_gap(&self) -> u64 {
        self.0.max_gap()
    }

    #[getter]
    fn gap_count(&self) -> u64 {
        self.0.gap_count()
    }

    fn histogram(&self) -> BTreeMap<u64, u64> {
        self.0.histogram().clone()
    }

    fn mod_profile(&self, modulus: u64) -> PyResult<Vec<u64>> {
        self.0.mod_profile(modulus).map_err(err)
    }
}

#[pyfunction]
fn gap_stats(level: &LevelSet) -> PyResult<GapStats> {
    stats::gap_stats(&level.0).map(GapStats).map_err(err)
}

#[pyfunction]
fn density(level: &LevelSet) -> f64 {
    stats::density(&level.0)
}

#[pyfunction]
fn surjectivity_index(level: &LevelSet) -> u32 {
    stats::surjectivity_index(&level.0)
}

/// Member counts per residue class of the codes modulo `modulus`.
#[pyfunction]
fn modular_profile(level: &LevelSet, modulus: u64) -> PyResult<Vec<u64>> {
    Ok(stats::modular_profile(&level.0, modulus)
        .map_err(err)?
        .class_counts()
        .to_vec())
}

#[pyfunction]
fn discrepancy(level: &LevelSet, modulus: u64) -> PyResult<f64> {
    Ok(stats::discrepancy(
        &stats::modular_profile(&level.0, modulus).map_err(err)?,
    ))
}

#[pyfunction]
fn alpha_zero(n1: u32, count: u64) -> PyResult<f64> {
    stats::alpha_zero(n1, count).map_err(err)
}

#[pyfunction]
fn gould(k: u64) -> u64 {
    patterns::gould(k)
}

#[pyfunction]
fn binom_is_odd(a: u64, b: u64) -> bool {
    patterns::binom_is_odd(a, b)
}

#[pyfunction]
fn predict_single_one(a: u64, b: u64) -> bool {
    patterns::predict_single_one(a, b)
}

#[pyfunction]
fn predict_double_one(a: u64, b: u64) -> bool {
    patterns::predict_double_one(a, b)
}

#[pyfunction]
fn predict_101(a: u64, b: u64) -> PyResult<bool> {
    patterns::predict_101(a, b).map_err(err)
}

#[pyfunction]
fn predict_quad_one(a: u64, b: u64) -> PyResult<bool> {
    patterns::predict_quad_one(a, b).map_err(err)
}

#[pyfunction]
fn predict_triple_one_suffix(n: u64) -> PyResult<bool> {
    patterns::predict_triple_one_suffix(n).map_err(err)
}

#[pyfunction]
fn predict_10101(a: u64, b: u64) -> PyResult<bool> {
    patterns::predict_10101(a, b).map_err(err)
}

#[pyfunction]
fn predict_ones_then_zeros(x: u64, y: u64) -> PyResult<bool> {
    patterns::predict_ones_then_zeros(x, y).map_err(err)
}

#[pyfunction]
fn count_zeros_then_ones(n: u64) -> PyResult<u64> {
    patterns::count_zeros_then_ones(n).map_err(err)
}

/// Sorted `(x, y)` points of the k-th Sierpinski set.
#[pyfunction]
fn sierpinski_points(k: u32) -> Vec<(u64, u64)> {
    patterns::sierpinski_points(k)
        .points()
        .iter()
        .copied()
        .collect()
}

#[pyfunction]
fn save_level(level: &LevelSet, path: PathBuf) -> PyResult<()> {
    io::save_level(&level.0, path).map_err(err)
}

#[pyfunction]
fn load_level(path: PathBuf) -> PyResult<LevelSet> {
    io::load_level(path).map(LevelSet).map_err(err)
}

#[pyfunction]
fn render_heatmap(level: &LevelSet, path: PathBuf) -> PyResult<()> {
    io::render_heatmap(&level.0, path).map_err(err)
}

#[pymodule]
pub fn ulam_words(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Word>()?;
    m.add_class::<LevelSet>()?;
    m.add_class::<UlamTable>()?;
    m.add_class::<GapStats>()?;
    m.add_function(wrap_pyfunction!(gap_stats, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(surjectivity_index, m)?)?;
    m.add_function(wrap_pyfunction!(modular_profile, m)?)?;
    m.add_function(wrap_pyfunction!(discrepancy, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_zero, m)?)?;
    m.add_function(wrap_pyfunction!(gould, m)?)?;
    m.add_function(wrap_pyfunction!(binom_is_odd, m)?)?;
    m.add_function(wrap_pyfunction!(predict_single_one, m)?)?;
    m.add_function(wrap_pyfunction!(predict_double_one, m)?)?;
    m.add_function(wrap_pyfunction!(predict_101, m)?)?;
    m.add_function(wrap_pyfunction!(predict_quad_one, m)?)?;
    m.add_function(wrap_pyfunction!(predict_triple_one_suffix, m)?)?;
    m.add_function(wrap_pyfunction!(predict_10101, m)?)?;
    m.add_function(wrap_pyfunction!(predict_ones_then_zeros, m)?)?;
    m.add_function(wrap_pyfunction!(count_zeros_then_ones, m)?)?;
    m.add_function(wrap_pyfunction!(sierpinski_points, m)?)?;
    m.add_function(wrap_pyfunction!(save_level, m)?)?;
    m.add_function(wrap_pyfunction!(load_level, m)?)?;
    m.add_function(wrap_pyfunction!(render_heatmap, m)?)?;
    m.add("MAX_WORD_LENGTH", ulam::word::MAX_WORD_LENGTH)?;
    Ok(())
}
