//! Python bindings: fields, words and trace polynomials, SL(2, 2^k)
//! matrices, and the two verification drivers.

#[pyo3::pymodule]
mod wordmap_py {
    use std::collections::HashMap;

    use pyo3::exceptions::PyValueError;
    use pyo3::prelude::*;

    use wordmap::altverify::{self, Convention, EngineOptions, VerifyOptions};
    use wordmap::binaryfield::{self, BinaryField, FieldElement};
    use wordmap::perm::{alt_class_id, alt_elements, PermGroup};
    use wordmap::sl2::{self, Sl2Group};
    use wordmap::words::{self, image_by_enumeration};
    use wordmap::{sl2verify, tracepoly};

    #[pymodule_export]
    const DEFAULT_SEED: u64 = wordmap::cli::DEFAULT_SEED;

    fn err(e: wordmap::Error) -> PyErr {
        PyValueError::new_err(e.to_string())
    }

    /// GF(2^k) with elements given as integers (bit i is the coefficient of x^i).
    #[pyclass(frozen, eq, hash, skip_from_py_object)]
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    struct Field {
        inner: BinaryField,
    }

    impl Field {
        fn elem(&self, a: u64) -> PyResult<FieldElement> {
            self.inner.elem(a).map_err(err)
        }
    }

    #[pymethods]
    impl Field {
        #[new]
        fn new(k: u32) -> PyResult<Self> {
            Ok(Field { inner: BinaryField::new(k).map_err(err)? })
        }

        #[staticmethod]
        fn with_modulus(modulus: u64) -> PyResult<Self> {
            Ok(Field { inner: BinaryField::with_modulus(modulus).map_err(err)? })
        }

        #[getter]
        fn degree(&self) -> u32 {
            self.inner.degree()
        }

        #[getter]
        fn size(&self) -> u64 {
            self.inner.size()
        }

        #[getter]
        fn modulus(&self) -> u64 {
            self.inner.modulus()
        }

        fn mul(&self, a: u64, b: u64) -> PyResult<u64> {
            Ok((self.elem(a)? * self.elem(b)?).bits())
        }

        fn inv(&self, a: u64) -> PyResult<u64> {
            Ok(self.elem(a)?.inv().map_err(err)?.bits())
        }

        fn pow(&self, a: u64, e: i64) -> PyResult<u64> {
            Ok(self.elem(a)?.pow(e).map_err(err)?.bits())
        }

        fn trace(&self, a: u64) -> PyResult<u8> {
            Ok(self.elem(a)?.absolute_trace())
        }

        fn order(&self, a: u64) -> PyResult<u64> {
            self.elem(a)?.element_order().map_err(err)
        }

        /// A root of `a^2 + a = b`, or None when the trace of `b` is 1.
        fn solve_artin_schreier(&self, b: u64) -> PyResult<Option<u64>> {
            Ok(binaryfield::solve_artin_schreier(self.elem(b)?).map(|a| a.bits()))
        }

        /// `f^m(u)` for `f(u) = u^2 + u`.
        fn f_iterate(&self, u: u64, m: u64) -> PyResult<u64> {
            Ok(binaryfield::f_iterate(self.elem(u)?, m).bits())
        }

        fn __repr__(&self) -> String {
            format!("Field(degree={}, modulus={:#x})", self.inner.degree(), self.inner.modulus())
        }
    }

    /// A free-group word parsed from text such as `[[x,y],x]` or `x^2 y^-1`.
    #[pyclass(frozen, eq, hash, skip_from_py_object)]
    #[derive(Clone, PartialEq, Eq, Hash)]
    struct Word {
        inner: words::Word,
    }

    #[pymethods]
    impl Word {
        #[new]
        fn new(text: &str) -> PyResult<Self> {
            Ok(Word { inner: words::parse(text).map_err(err)? })
        }

        fn generators(&self) -> Vec<String> {
            self.inner.generators().into_iter().collect()
        }

        fn normalize(&self) -> Word {
            Word { inner: self.inner.normalize() }
        }

        /// The trace polynomial in `s = tr x`, `t = tr y`, `u = tr xy`.
        fn trace_polynomial(&self) -> PyResult<String> {
            Ok(tracepoly::trace_polynomial(&self.inner).map_err(err)?.to_string())
        }

        /// Checks `tr([[v,x],x]) = T^2 + T s^2` modulo 2 for this word as `v`.
        fn verify_lemma_trace(&self) -> PyResult<bool> {
            tracepoly::verify_lemma_trace(&self.inner).map_err(err)
        }

        /// Evaluates in SL(2, q); `assignment` maps generator names to matrices.
        fn evaluate(&self, assignment: HashMap<String, Sl2Matrix>) -> PyResult<Sl2Matrix> {
            let first = assignment
                .values()
                .next()
                .ok_or_else(|| PyValueError::new_err("empty assignment"))?;
            let group = Sl2Group::new(first.inner.field()).map_err(err)?;
            let map = assignment.into_iter().map(|(k, v)| (k, v.inner)).collect();
            Ok(Sl2Matrix { inner: self.inner.evaluate(&map, &group).map_err(err)? })
        }

        fn __str__(&self) -> String {
            self.inner.to_string()
        }

        fn __repr__(&self) -> String {
            format!("Word('{}')", self.inner)
        }
    }

    /// An element of SL(2, q), q a power of two.
    #[pyclass(frozen, eq, hash, from_py_object)]
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    struct Sl2Matrix {
        inner: sl2::Sl2Matrix,
    }

    #[pymethods]
    impl Sl2Matrix {
        #[new]
        fn new(q: u64, a: u64, b: u64, c: u64, d: u64) -> PyResult<Self> {
            let f = BinaryField::of_size(q).map_err(err)?;
            let e = |x| f.elem(x).map_err(err);
            Ok(Sl2Matrix { inner: sl2::Sl2Matrix::new(e(a)?, e(b)?, e(c)?, e(d)?).map_err(err)? })
        }

        /// The matrix `[[0, 1], [1, tau]]` of trace `tau`.
        #[staticmethod]
        fn companion(q: u64, tau: u64) -> PyResult<Self> {
            let f = BinaryField::of_size(q).map_err(err)?;
            Ok(Sl2Matrix { inner: sl2::Sl2Matrix::companion(f.elem(tau).map_err(err)?) })
        }

        #[getter]
        fn entries(&self) -> [u64; 4] {
            self.inner.raw()
        }

        #[getter]
        fn trace(&self) -> u64 {
            self.inner.trace().bits()
        }

        fn order(&self) -> PyResult<u64> {
            sl2::element_order(&self.inner).map_err(err)
        }

        fn class_id(&self) -> String {
            sl2::class_id(&self.inner).to_string()
        }

        fn __mul__(&self, other: &Sl2Matrix) -> PyResult<Sl2Matrix> {
            if self.inner.field() != other.inner.field() {
                return Err(PyValueError::new_err("matrices over different fields"));
            }
            Ok(Sl2Matrix { inner: self.inner.mul(&other.inner) })
        }

        fn __pow__(&self, e: i64, _modulo: Option<u64>) -> Sl2Matrix {
            Sl2Matrix { inner: self.inner.pow(e) }
        }

        fn inverse(&self) -> Sl2Matrix {
            Sl2Matrix { inner: self.inner.inverse() }
        }

        fn __repr__(&self) -> String {
            format!("Sl2Matrix({})", self.inner)
        }
    }

    /// One built-in Alt(n) construction.
    #[pyclass(frozen, get_all, skip_from_py_object)]
    #[derive(Clone)]
    struct Recipe {
        index: usize,
        target: String,
        c1: String,
        c2: String,
        exps: Vec<i64>,
        n_min: usize,
        n_max: usize,
    }

    #[pymethods]
    impl Recipe {
        fn __repr__(&self) -> String {
            format!("Recipe({}, target={}, c1={}, c2={}, exps={:?})", self.index, self.target, self.c1, self.c2, self.exps)
        }
    }

    #[pyfunction]
    fn recipes() -> Vec<Recipe> {
        altverify::recipes()
            .into_iter()
            .map(|r| {
                let range = r.n_range();
                Recipe {
                    index: r.index,
                    target: r.target.to_string(),
                    c1: r.c1.to_string(),
                    c2: r.c2.to_string(),
                    exps: r.exps.clone(),
                    n_min: *range.start(),
                    n_max: *range.end(),
                }
            })
            .collect()
    }

    #[pyfunction]
    fn trace_polynomial(word: &str) -> PyResult<String> {
        Word::new(word)?.trace_polynomial()
    }

    /// Report lines for one recipe and whether none of them failed.
    #[pyfunction]
    #[pyo3(signature = (recipe, n_min=None, n_max=None, workers=1, convention="std", seed=DEFAULT_SEED))]
    fn verify_alt(
        py: Python<'_>,
        recipe: usize,
        n_min: Option<usize>,
        n_max: Option<usize>,
        workers: usize,
        convention: &str,
        seed: u64,
    ) -> PyResult<(Vec<String>, bool)> {
        let convention: Convention = convention.parse().map_err(err)?;
        let r = altverify::recipes()
            .into_iter()
            .find(|r| r.index == recipe)
            .ok_or_else(|| PyValueError::new_err(format!("no recipe {recipe}")))?;
        let opts = VerifyOptions {
            engine: EngineOptions { workers, convention, heartbeat: false },
            n_min,
            n_max,
            seed,
            ..Default::default()
        };
        let reports = py.detach(|| altverify::verify_construction(&r, &opts)).map_err(err)?;
        let ok = reports.iter().all(|r| r.verdict != altverify::Verdict::Fail);
        Ok((reports.iter().map(|r| r.line(false)).collect(), ok))
    }

    /// Report lines for one field size and whether the required checks held.
    #[pyfunction]
    #[pyo3(signature = (q, seed=DEFAULT_SEED, workers=1))]
    fn verify_sl2(py: Python<'_>, q: u64, seed: u64, workers: usize) -> PyResult<(Vec<String>, bool)> {
        py.detach(|| sl2verify::verify_sl2_lines(q, seed, workers)).map_err(err)
    }

    /// Image of a word by full enumeration, as (class, representative) pairs.
    /// `group` is `alt:N` or `sl2:Q`.
    #[pyfunction]
    #[pyo3(signature = (word, group, workers=1))]
    fn image(py: Python<'_>, word: &Word, group: &str, workers: usize) -> PyResult<Vec<(String, String)>> {
        let bad = || PyValueError::new_err(format!("group `{group}` is not alt:N or sl2:Q"));
        let (kind, param) = group.split_once(':').ok_or_else(bad)?;
        let param: u64 = param.parse().map_err(|_| bad())?;
        let w = &word.inner;
        py.detach(|| match kind {
            "alt" => {
                let n = param as usize;
                let elements = alt_elements(n)?;
                let img = image_by_enumeration(w, &PermGroup { n }, &elements, workers, alt_class_id)?;
                Ok(img.into_iter().map(|(c, r)| (c.to_string(), r.to_string())).collect())
            }
            "sl2" => {
                let g = Sl2Group::of_size(param)?;
                let elements: Vec<_> = g.elements().collect();
                let img = image_by_enumeration(w, &g, &elements, workers, sl2::class_id)?;
                Ok(img.into_iter().map(|(c, r)| (c.to_string(), r.to_string())).collect())
            }
            _ => Err(wordmap::Error::Unsupported(format!("group `{group}`"))),
        })
        .map_err(err)
    }
}
