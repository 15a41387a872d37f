//! Python bindings. Geometry crosses the boundary as the same JSON documents
//! the command line reads and writes; rationals are strings such as "3/4".

use pyo3::prelude::*;

#[pymodule]
mod ncode {
    use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
    use pyo3::prelude::*;
    use pyo3::types::PyAny;

    use ncode_core::geometry::arrangement::{code_with_witnesses, CodeOptions};
    use ncode_core::geometry::rational::{format_rational, parse_rational, Point};
    use ncode_core::geometry::transform::{close_realization, inflate_realization, trim_realization};
    use ncode_core::{bounds, families, io, morphisms, realize, sunflower};
    use ncode_core::{Codeword, Error, SimplicialComplex};

    fn err(e: Error) -> PyErr {
        match e {
            Error::CapExceeded { .. } => PyOverflowError::new_err(e.to_string()),
            Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
            _ => PyValueError::new_err(e.to_string()),
        }
    }

    fn loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
        py.import("json")?.call_method1("loads", (text,))
    }

    /// A combinatorial code on neurons 1..n; the empty word is always present.
    #[pyclass(eq, frozen, skip_from_py_object, module = "ncode")]
    #[derive(Clone, PartialEq)]
    pub struct Code {
        inner: ncode_core::Code,
    }

    fn wrap(inner: ncode_core::Code) -> Code {
        Code { inner }
    }

    #[pymethods]
    impl Code {
        #[new]
        #[pyo3(signature = (n, codewords, strict = false))]
        fn new(n: usize, codewords: Vec<Vec<usize>>, strict: bool) -> PyResult<Self> {
            let inner = if strict {
                ncode_core::Code::from_words_strict(n, &codewords)
            } else {
                ncode_core::Code::from_words(n, &codewords)
            };
            inner.map(wrap).map_err(err)
        }

        #[staticmethod]
        fn from_json(text: &str) -> PyResult<Self> {
            io::code_from_json(text, false).map(wrap).map_err(err)
        }

        fn to_json(&self) -> String {
            io::code_to_json(&self.inner)
        }

        #[getter]
        fn n(&self) -> usize {
            self.inner.n()
        }

        /// Codewords in canonical order, as sorted neuron lists.
        fn codewords(&self) -> Vec<Vec<usize>> {
            self.inner.iter().map(Codeword::neurons).collect()
        }

        fn maximal_codewords(&self) -> Vec<Vec<usize>> {
            self.inner.maximal_codewords().into_iter().map(Codeword::neurons).collect()
        }

        fn is_intersection_complete(&self) -> bool {
            self.inner.is_intersection_complete()
        }

        fn is_simplicial_complex(&self) -> bool {
            self.inner.is_simplicial_complex()
        }

        fn intersection_completion(&self) -> Code {
            wrap(self.inner.intersection_completion())
        }

        /// Dimension of the simplicial complex generated by the code.
        fn dim(&self) -> i64 {
            self.inner.dim()
        }

        fn trunk(&self, sigma: Vec<usize>) -> PyResult<Vec<Vec<usize>>> {
            let s = Codeword::from_neurons(self.inner.n(), &sigma).map_err(err)?;
            Ok(self.inner.trunk(s).map_err(err)?.into_iter().map(Codeword::neurons).collect())
        }

        fn restrict(&self, neurons: Vec<usize>) -> PyResult<Code> {
            let s = Codeword::from_neurons(self.inner.n(), &neurons).map_err(err)?;
            morphisms::restriction(&self.inner, s).map(wrap).map_err(err)
        }

        /// Bounds on the embedding dimensions, as a dict.
        fn bounds<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
            let report = bounds::bound_report(&self.inner);
            loads(py, &serde_json::to_string(&report).expect("reports serialize"))
        }

        fn __len__(&self) -> usize {
            self.inner.len()
        }

        fn __repr__(&self) -> String {
            format!("Code(n={}, {})", self.inner.n(), self.inner)
        }
    }

    #[pyfunction]
    fn make_s_n(n: usize) -> PyResult<Code> {
        families::make_s_n(n).map(wrap).map_err(err)
    }

    #[pyfunction]
    fn make_t_n(n: usize) -> PyResult<Code> {
        families::make_t_n(n).map(wrap).map_err(err)
    }

    /// `S_Δ` for the complex on `n` vertices generated by `facets`.
    #[pyfunction]
    fn make_s_delta(n: usize, facets: Vec<Vec<usize>>) -> PyResult<Code> {
        let words = facets
            .iter()
            .map(|f| Codeword::from_neurons(n, f))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let delta = SimplicialComplex::from_facets(n, words).map_err(err)?;
        families::make_s_delta(&delta).map(wrap).map_err(err)
    }

    #[pyfunction]
    fn make_s_c_over_d(c: &Code, d: &Code) -> PyResult<Code> {
        families::make_s_c_over_d(&c.inner, &d.inner).map(wrap).map_err(err)
    }

    /// `(lower, upper, exact)` for the open embedding dimension of `T_n`.
    #[pyfunction]
    fn t_n_bounds(n: usize) -> PyResult<(usize, usize, Option<usize>)> {
        let b = bounds::t_n_bounds(n).map_err(err)?;
        Ok((b.lower, b.upper, b.exact))
    }

    #[pyfunction]
    fn binomial_extremal(n: usize) -> PyResult<u64> {
        bounds::binomial_extremal(n).map_err(err)
    }

    /// The code of a realization given as JSON.
    #[pyfunction]
    fn code_of_realization(realization_json: &str) -> PyResult<Code> {
        let r = io::realization_from_json(realization_json).map_err(err)?;
        Ok(wrap(code_with_witnesses(&r, CodeOptions::default()).map_err(err)?.code))
    }

    /// Closed realization of an intersection complete code: returns
    /// `(realization_json, plan_json)`.
    #[pyfunction]
    fn realize_closed(code: &Code) -> PyResult<(String, String)> {
        let (r, plan) = realize::realize_closed(&code.inner).map_err(err)?;
        Ok((io::realization_to_json(&r), io::plan_to_json(&plan)))
    }

    /// Checks a plan; returns a dict with one entry per layer.
    #[pyfunction]
    #[pyo3(signature = (code, plan_json, deep = false))]
    fn verify_plan<'py>(py: Python<'py>, code: &Code, plan_json: &str, deep: bool) -> PyResult<Bound<'py, PyAny>> {
        let plan = io::plan_from_json(plan_json).map_err(err)?;
        let check = realize::verify_plan(&code.inner, &plan, deep).map_err(err)?;
        let v = serde_json::json!({
            "combinatorial": check.combinatorial,
            "witness": check.witness,
            "geometric": check.geometric,
            "passed": check.passed(),
            "notes": check.notes,
        });
        loads(py, &v.to_string())
    }

    /// Trims an open realization; returns `(realization_json, eps)`.
    #[pyfunction]
    fn trim(realization_json: &str) -> PyResult<(String, String)> {
        let r = io::realization_from_json(realization_json).map_err(err)?;
        let (t, eps) = trim_realization(&r, CodeOptions::default()).map_err(err)?;
        Ok((io::realization_to_json(&t), format_rational(&eps)))
    }

    #[pyfunction]
    fn close(realization_json: &str) -> PyResult<String> {
        let r = io::realization_from_json(realization_json).map_err(err)?;
        close_realization(&r).map(|c| io::realization_to_json(&c)).map_err(err)
    }

    /// Inflates a closed realization; returns `(realization_json, eps)`.
    #[pyfunction]
    fn inflate(realization_json: &str) -> PyResult<(String, String)> {
        let r = io::realization_from_json(realization_json).map_err(err)?;
        let (t, eps) = inflate_realization(&r, CodeOptions::default()).map_err(err)?;
        Ok((io::realization_to_json(&t), format_rational(&eps)))
    }

    fn points_from(points: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Vec<Point>> {
        points
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|x| parse_rational(&x.str()?.to_string()).map_err(err))
                    .collect::<PyResult<Point>>()
            })
            .collect()
    }

    /// Parts (0-indexed) and a common point, or `None`.
    #[pyfunction]
    fn tverberg_partition(points: Vec<Vec<Bound<'_, PyAny>>>, r: usize) -> PyResult<Option<(Vec<Vec<usize>>, Vec<String>)>> {
        let pts = points_from(points)?;
        Ok(sunflower::tverberg_partition(&pts, r)
            .map_err(err)?
            .map(|t| (t.parts, t.point.iter().map(format_rational).collect())))
    }

    /// A certified k-flexible sunflower with petal points missing the
    /// center, as sunflower JSON.
    #[pyfunction]
    #[pyo3(signature = (d, k, skew = false))]
    fn build_counterexample(d: usize, k: usize, skew: bool) -> PyResult<String> {
        let (spec, points) = sunflower::build_counterexample(d, k, skew).map_err(err)?;
        Ok(io::sunflower_to_json(&spec, &points))
    }

    #[pyfunction]
    #[pyo3(signature = (d, k, n, seed, verify = true))]
    fn flexible_trial(d: usize, k: usize, n: usize, seed: u64, verify: bool) -> PyResult<bool> {
        sunflower::flexible_trial(d, k, n, seed, verify).map_err(err)
    }

    #[pyfunction]
    fn is_k_flexible(code: &Code) -> Option<usize> {
        sunflower::is_k_flexible(&code.inner)
    }
}
