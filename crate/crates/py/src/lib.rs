use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use cohera_core::algebra::{combine, extract, support_of};
use cohera_core::atoms::{at_of, atom_partition, enum_lex_atoms};
use cohera_core::cli::model::set_to_json;
use cohera_core::cli::verify::{parse_suites, run_verify, VerifyOptions};
use cohera_core::cli::{load_model, parse_model, LoadedModel};
use cohera_core::desirability::{is_coherent_extension, lift_event, natural_extension_member, set_member};
use cohera_core::embeddings::saturate;
use cohera_core::partition::{cond_independent, independent};
use cohera_core::space::anonymous_space;
use cohera_core::{Error, Event, Gamble, SetRep};

create_exception!(cohera, CoheraError, PyException);
create_exception!(cohera, LimitExceededError, CoheraError);

fn err(e: Error) -> PyErr {
    match e {
        Error::LimitExceeded { .. } => LimitExceededError::new_err(e.to_string()),
        _ => CoheraError::new_err(e.to_string()),
    }
}

fn loads(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn set_value(py: Python<'_>, d: &SetRep) -> PyResult<Py<PyAny>> {
    loads(py, &set_to_json(d).to_string())
}

fn parse_gambles(csvs: &[String]) -> Result<Vec<Gamble>, Error> {
    let n = csvs.first().map_or(0, |c| c.split(',').count());
    let space = anonymous_space(n)?;
    csvs.iter().map(|c| Gamble::parse(&space, c)).collect()
}

/// Whether the assertions (comma-separated gambles) avoid partial loss.
#[pyfunction]
fn coherent(assertions: Vec<String>) -> PyResult<bool> {
    let k = parse_gambles(&assertions).map_err(err)?;
    is_coherent_extension(&k).map_err(err)
}

/// Whether `gamble` lies in the natural extension of `assertions`.
#[pyfunction]
fn natural_extension_contains(assertions: Vec<String>, gamble: String) -> PyResult<bool> {
    let mut all = assertions;
    all.push(gamble);
    let mut k = parse_gambles(&all).map_err(err)?;
    let f = k.pop().expect("gamble was pushed");
    natural_extension_member(&k, &f).map_err(err)
}

/// Runs property suites and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (suites = "all", size_limit = 3, seed = 0, samples = 50, model = None))]
fn verify(
    py: Python<'_>,
    suites: &str,
    size_limit: usize,
    seed: u64,
    samples: usize,
    model: Option<PathBuf>,
) -> PyResult<Py<PyAny>> {
    let opts = VerifyOptions {
        suites: parse_suites(suites).map_err(err)?,
        size_limit,
        seed,
        samples,
    };
    let loaded = model.as_deref().map(load_model).transpose().map_err(err)?;
    let report = py.detach(|| run_verify(&opts, loaded.as_ref())).map_err(err)?;
    loads(py, &report.to_json())
}

#[pyclass(frozen, name = "Model")]
struct PyModel {
    inner: LoadedModel,
}

impl PyModel {
    fn set(&self, name: &str) -> PyResult<&SetRep> {
        self.inner.model.set(name).map_err(err)
    }

    fn event(&self, worlds: &[String]) -> PyResult<Event> {
        Event::from_names(self.inner.space(), worlds).map_err(err)
    }

    fn question(&self, name: &str) -> PyResult<&cohera_core::Partition> {
        self.inner.model.lattice().get(name).map_err(err)
    }
}

#[pymethods]
impl PyModel {
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        load_model(&path).map(|inner| PyModel { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_model(text).map(|inner| PyModel { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn digest(&self) -> String {
        self.inner.digest.clone()
    }

    #[getter]
    fn worlds(&self) -> Vec<String> {
        self.inner.space().worlds().to_vec()
    }

    #[getter]
    fn questions(&self) -> Vec<String> {
        self.inner.model.lattice().questions().iter().map(|q| q.name.clone()).collect()
    }

    #[getter]
    fn closure_additions(&self) -> Vec<String> {
        self.inner.closure_additions().to_vec()
    }

    #[getter]
    fn sets(&self) -> Vec<String> {
        self.inner.model.sets().iter().map(|(n, _)| n.clone()).collect()
    }

    fn member(&self, set: &str, gamble: &str) -> PyResult<bool> {
        let f = Gamble::parse(self.inner.space(), gamble).map_err(err)?;
        set_member(self.set(set)?, &f).map_err(err)
    }

    fn is_coherent(&self, set: &str) -> PyResult<bool> {
        Ok(!self.set(set)?.is_top())
    }

    fn combine(&self, py: Python<'_>, sets: Vec<String>) -> PyResult<Py<PyAny>> {
        let Some((first, rest)) = sets.split_first() else {
            return Err(CoheraError::new_err("combine needs at least one set"));
        };
        let mut acc = self.set(first)?.clone();
        for name in rest {
            acc = combine(&acc, self.set(name)?).map_err(err)?;
        }
        set_value(py, &acc)
    }

    fn extract(&self, py: Python<'_>, set: &str, question: &str) -> PyResult<Py<PyAny>> {
        let d = extract(self.set(set)?, self.question(question)?).map_err(err)?;
        set_value(py, &d)
    }

    /// `(question, least)` for the first support in lattice order, or None.
    fn support(&self, set: &str) -> PyResult<Option<(String, bool)>> {
        let lattice = self.inner.model.lattice();
        let s = support_of(self.set(set)?, lattice).map_err(err)?;
        Ok(s.map(|s| (lattice.question(s.question).name.clone(), s.least)))
    }

    fn saturate(&self, worlds: Vec<String>, question: &str) -> PyResult<Vec<String>> {
        let s = self.event(&worlds)?;
        Ok(saturate(&s, self.question(question)?).map_err(err)?.names())
    }

    fn independent(&self, questions: Vec<String>) -> PyResult<bool> {
        let ps = questions.iter().map(|q| self.question(q)).collect::<PyResult<Vec<_>>>()?;
        independent(&ps).map_err(err)
    }

    fn cond_independent(&self, questions: Vec<String>, given: &str) -> PyResult<bool> {
        let ps = questions.iter().map(|q| self.question(q)).collect::<PyResult<Vec<_>>>()?;
        cond_independent(&ps, self.question(given)?).map_err(err)
    }

    fn lift(&self, py: Python<'_>, worlds: Vec<String>) -> PyResult<Py<PyAny>> {
        set_value(py, &lift_event(&self.event(&worlds)?))
    }

    #[pyo3(signature = (question = None))]
    fn atoms(&self, question: Option<&str>) -> PyResult<Vec<Vec<Vec<String>>>> {
        let family = enum_lex_atoms(self.inner.space()).map_err(err)?;
        match question {
            None => Ok(vec![(0..family.len()).map(|i| family.names(i)).collect()]),
            Some(q) => {
                let p = atom_partition(self.question(q)?, &family).map_err(err)?;
                Ok(p.blocks()
                    .iter()
                    .map(|b| b.iter().map(|&i| family.names(i)).collect())
                    .collect())
            }
        }
    }

    fn at_of(&self, set: &str) -> PyResult<Vec<Vec<String>>> {
        let family = enum_lex_atoms(self.inner.space()).map_err(err)?;
        let atoms = at_of(self.set(set)?, &family).map_err(err)?;
        Ok(atoms.into_iter().map(|i| family.names(i)).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Model(worlds={:?}, questions={}, sets={})",
            self.inner.space().worlds(),
            self.inner.model.lattice().len(),
            self.inner.model.sets().len()
        )
    }
}

#[pymodule]
fn cohera(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CoheraError", m.py().get_type::<CoheraError>())?;
    m.add("LimitExceededError", m.py().get_type::<LimitExceededError>())?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(coherent, m)?)?;
    m.add_function(wrap_pyfunction!(natural_extension_contains, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
