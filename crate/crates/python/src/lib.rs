use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use surfcx::bounds::{self, Exception, FramingMode, HeegaardData, Known};
use surfcx::canon::{canonical_signature, triangulation_signature};
use surfcx::census::enumerate_cubulations_with_workers;
use surfcx::convert::{cubulation_to_triangulation, triangulation_to_cubulation, ConversionStats, Strategy};
use surfcx::duality::{dual_dehn_surface, verify_duality_counts};
use surfcx::format::{parse_cubulation, parse_triangulation, write_cubulation, write_triangulation};
use surfcx::homology::{cubulation_homology, homology_groups, HomologyProfile};
use surfcx::loops2d::{self, enumerate_dehn_loops, verify_lc, MAX_ENUMERATED_CROSSINGS};
use surfcx::validate::{validate_closed_3manifold, validate_cubulation, ManifoldReport};
use surfcx::{cubulation, triangulation};

fn value_error<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "ManifoldReport", frozen)]
struct PyManifoldReport {
    #[pyo3(get)]
    closed: bool,
    #[pyo3(get)]
    pseudo_manifold: bool,
    #[pyo3(get)]
    orientable: bool,
    #[pyo3(get)]
    euler: i64,
    /// `(vertices, edges, faces, cells)`
    #[pyo3(get)]
    counts: (usize, usize, usize, usize),
    #[pyo3(get)]
    components: usize,
    #[pyo3(get)]
    failure: Option<String>,
}

impl From<ManifoldReport> for PyManifoldReport {
    fn from(r: ManifoldReport) -> Self {
        let c = r.counts;
        PyManifoldReport {
            closed: r.is_closed_manifold,
            pseudo_manifold: r.is_pseudo_manifold,
            orientable: r.orientable,
            euler: r.euler_characteristic(),
            counts: (c.vertices, c.edges, c.faces, c.cells),
            components: r.components,
            failure: r.failure_witness.map(|w| w.to_string()),
        }
    }
}

#[pymethods]
impl PyManifoldReport {
    fn __repr__(&self) -> String {
        format!(
            "ManifoldReport(closed={}, orientable={}, euler={}, counts={:?})",
            self.closed, self.orientable, self.euler, self.counts
        )
    }
}

#[pyclass(name = "Homology", frozen)]
struct PyHomology {
    profile: HomologyProfile,
}

#[pymethods]
impl PyHomology {
    /// Free ranks of H0..H3.
    #[getter]
    fn betti(&self) -> [usize; 4] {
        self.profile.betti()
    }

    /// Torsion coefficients of `H_i`.
    fn torsion(&self, i: usize) -> PyResult<Vec<String>> {
        if i > 3 {
            return Err(PyValueError::new_err("degree must be 0..3"));
        }
        Ok(self.profile.h(i).torsion.iter().map(|t| t.to_string()).collect())
    }

    fn group(&self, i: usize) -> PyResult<String> {
        if i > 3 {
            return Err(PyValueError::new_err("degree must be 0..3"));
        }
        Ok(self.profile.h(i).to_string())
    }

    fn __str__(&self) -> String {
        self.profile.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Homology('{}')", self.profile)
    }
}

#[pyclass(name = "DualSurface", frozen)]
struct PyDualSurface {
    #[pyo3(get)]
    triple_points: usize,
    #[pyo3(get)]
    arcs: usize,
    #[pyo3(get)]
    regions: usize,
    #[pyo3(get)]
    balls: usize,
    /// `(euler, orientable, genus)` per sheet component.
    #[pyo3(get)]
    sheet: Vec<(i64, bool, i64)>,
    #[pyo3(get)]
    counts_ok: bool,
    text: String,
}

#[pymethods]
impl PyDualSurface {
    fn __str__(&self) -> String {
        self.text.clone()
    }
}

fn stats_tuple(s: &ConversionStats) -> (usize, usize, usize) {
    (s.input_cells, s.output_cells, s.inserted_cells)
}

#[pyclass(name = "Cubulation", frozen)]
struct PyCubulation {
    inner: cubulation::Cubulation,
}

#[pymethods]
impl PyCubulation {
    /// Parses the `.cub` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyCubulation {
            inner: parse_cubulation(text).map_err(value_error)?,
        })
    }

    #[getter]
    fn cube_count(&self) -> usize {
        self.inner.cube_count()
    }

    fn validate(&self) -> PyManifoldReport {
        validate_cubulation(&self.inner).into()
    }

    fn homology(&self) -> PyHomology {
        PyHomology {
            profile: cubulation_homology(&self.inner),
        }
    }

    fn signature(&self) -> String {
        canonical_signature(&self.inner)
    }

    fn dual(&self) -> PyResult<PyDualSurface> {
        let r = dual_dehn_surface(&self.inner).map_err(value_error)?;
        Ok(PyDualSurface {
            triple_points: r.triple_points,
            arcs: r.singular_graph.arcs.len(),
            regions: r.region_count,
            balls: r.ball_count,
            sheet: r.sheet.components.iter().map(|c| (c.euler, c.orientable, c.genus())).collect(),
            counts_ok: verify_duality_counts(&self.inner, &r),
            text: r.to_string(),
        })
    }

    /// Returns the triangulation and `(input, output, inserted)` cell counts.
    #[pyo3(signature = (strategy = "exhaustive"))]
    fn to_triangulation(&self, strategy: &str) -> PyResult<(PyTriangulation, (usize, usize, usize))> {
        let strategy: Strategy = strategy.parse().map_err(value_error)?;
        let (tri, stats) = cubulation_to_triangulation(&self.inner, strategy).map_err(value_error)?;
        Ok((PyTriangulation { inner: tri }, stats_tuple(&stats)))
    }

    fn to_text(&self) -> String {
        write_cubulation(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Cubulation(cubes={})", self.inner.cube_count())
    }
}

#[pyclass(name = "Triangulation", frozen)]
struct PyTriangulation {
    inner: triangulation::Triangulation,
}

#[pymethods]
impl PyTriangulation {
    /// Parses the `.tri` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyTriangulation {
            inner: parse_triangulation(text).map_err(value_error)?,
        })
    }

    #[getter]
    fn tet_count(&self) -> usize {
        self.inner.tet_count()
    }

    fn validate(&self) -> PyManifoldReport {
        validate_closed_3manifold(&self.inner).into()
    }

    fn homology(&self) -> PyHomology {
        PyHomology {
            profile: homology_groups(&self.inner),
        }
    }

    fn signature(&self) -> String {
        triangulation_signature(&self.inner)
    }

    fn to_cubulation(&self) -> PyResult<(PyCubulation, (usize, usize, usize))> {
        let (cub, stats) = triangulation_to_cubulation(&self.inner).map_err(value_error)?;
        Ok((PyCubulation { inner: cub }, stats_tuple(&stats)))
    }

    fn to_text(&self) -> String {
        write_triangulation(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Triangulation(tets={})", self.inner.tet_count())
    }
}

#[pyclass(name = "CensusRecord", frozen)]
struct PyCensusRecord {
    #[pyo3(get)]
    signature: String,
    #[pyo3(get)]
    orientable: bool,
    #[pyo3(get)]
    homology: String,
    #[pyo3(get)]
    sheet: String,
    #[pyo3(get)]
    euler_ok: bool,
    #[pyo3(get)]
    line: String,
    cubulation: cubulation::Cubulation,
}

#[pymethods]
impl PyCensusRecord {
    #[getter]
    fn cubulation(&self) -> PyCubulation {
        PyCubulation {
            inner: self.cubulation.clone(),
        }
    }

    fn __repr__(&self) -> String {
        format!("CensusRecord('{}', homology='{}')", self.signature, self.homology)
    }
}

/// Closed connected cubulations with `cubes` cubes, one per isomorphism class.
#[pyfunction]
#[pyo3(signature = (cubes, workers = 1))]
fn census(py: Python<'_>, cubes: usize, workers: usize) -> PyResult<Vec<PyCensusRecord>> {
    if cubes == 0 {
        return Err(PyValueError::new_err("cubes must be at least 1"));
    }
    let records = py.detach(|| enumerate_cubulations_with_workers(cubes, workers));
    Ok(records
        .into_iter()
        .map(|r| PyCensusRecord {
            line: r.line(),
            homology: r.homology.to_string(),
            sheet: r.sheet_summary(),
            signature: r.signature,
            orientable: r.orientable,
            euler_ok: r.euler_ok,
            cubulation: r.cubulation,
        })
        .collect())
}

/// `(unconditional, conditional)` bounds from an intersection matrix.
#[pyfunction]
#[pyo3(signature = (matrix, m = None, assume_p2 = false))]
fn heegaard_bound(matrix: Vec<Vec<u64>>, m: Option<u64>, assume_p2: bool) -> PyResult<(u64, Option<u64>)> {
    let mut h = HeegaardData::new(matrix).map_err(value_error)?;
    h.m = m;
    h.assume_p2_irreducible = assume_p2;
    let (plain, refined) = bounds::heegaard_bound(&h).map_err(value_error)?;
    Ok((plain.bound, refined.map(|r| r.bound)))
}

/// Surgery bound for a framed link given as a signed Gauss code.
#[pyfunction]
#[pyo3(signature = (gauss_code, explicit = false))]
fn surgery_bound(gauss_code: &str, explicit: bool) -> PyResult<u64> {
    let link = bounds::parse_gauss_code(gauss_code).map_err(value_error)?;
    let mode = if explicit { FramingMode::Explicit } else { FramingMode::Blackboard };
    Ok(bounds::surgery_bound(&link, mode).bound)
}

/// Interval for the other complexity; `None` for the flagged lens spaces.
#[pyfunction]
#[pyo3(signature = (c = None, sc = None, special = None))]
fn matveev_relation(c: Option<u64>, sc: Option<u64>, special: Option<&str>) -> PyResult<(Option<(u64, u64)>, String)> {
    let known = match (c, sc) {
        (Some(v), None) => Known::Matveev(v),
        (None, Some(v)) => Known::Surface(v),
        _ => return Err(PyValueError::new_err("give exactly one of c or sc")),
    };
    let exception = match special {
        None => None,
        Some("l31") => Some(Exception::L31),
        Some("l41") => Some(Exception::L41),
        Some(other) => return Err(PyValueError::new_err(format!("unknown special case '{other}'"))),
    };
    let r = bounds::matveev_relation(known, exception);
    Ok((r.interval, r.text))
}

/// Dehn loop records with at most `max_crossings` crossings, one line each.
#[pyfunction]
fn dehn_loops(max_crossings: usize) -> PyResult<Vec<String>> {
    if max_crossings > MAX_ENUMERATED_CROSSINGS {
        return Err(PyValueError::new_err(format!("max_crossings is limited to {MAX_ENUMERATED_CROSSINGS}")));
    }
    Ok(enumerate_dehn_loops(max_crossings).iter().map(|r| r.to_string()).collect())
}

/// Rows `(surface, formula lc, enumerated minimum, match)`.
#[pyfunction]
fn loop_complexity_table(max_crossings: usize) -> PyResult<Vec<(String, u64, Option<usize>, bool)>> {
    if max_crossings > MAX_ENUMERATED_CROSSINGS {
        return Err(PyValueError::new_err(format!("max_crossings is limited to {MAX_ENUMERATED_CROSSINGS}")));
    }
    let recs = enumerate_dehn_loops(max_crossings);
    Ok(verify_lc(&recs, max_crossings)
        .into_iter()
        .map(|r| (r.surface.to_string(), r.formula, r.enumerated, r.matches()))
        .collect())
}

/// `max(0, 1 - chi)` for the given surface.
#[pyfunction]
fn loop_complexity(orientable: bool, genus: u32) -> PyResult<u64> {
    if !orientable && genus == 0 {
        return Err(PyValueError::new_err("non-orientable genus starts at 1"));
    }
    Ok(loops2d::loop_complexity_formula(loops2d::SurfaceType { orientable, genus }))
}

#[pymodule]
fn pysurfcx(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCubulation>()?;
    m.add_class::<PyTriangulation>()?;
    m.add_class::<PyManifoldReport>()?;
    m.add_class::<PyHomology>()?;
    m.add_class::<PyDualSurface>()?;
    m.add_class::<PyCensusRecord>()?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(heegaard_bound, m)?)?;
    m.add_function(wrap_pyfunction!(surgery_bound, m)?)?;
    m.add_function(wrap_pyfunction!(matveev_relation, m)?)?;
    m.add_function(wrap_pyfunction!(dehn_loops, m)?)?;
    m.add_function(wrap_pyfunction!(loop_complexity_table, m)?)?;
    m.add_function(wrap_pyfunction!(loop_complexity, m)?)?;
    Ok(())
}
