//! Figure scenes: a small declarative description of named points and
//! constructions over one ball, rendered to tabular samples (CSV/JSON)
//! or a static SVG picture.

use std::collections::BTreeMap;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::ball::{BallParams, BallPoint};
use crate::error::{GyroError, Result};
use crate::geometry;
use crate::model::{GyroModel, ModelKind};

/// Declarative figure description. Named points live inside one ball;
/// constructions reference them by name and are sampled over the scene's
/// parameter grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SceneSpec {
    pub model: ModelKind,
    pub dim: usize,
    pub radius: f64,
    /// Named points, each a coordinate vector strictly inside the ball.
    pub points: BTreeMap<String, Vec<f64>>,
    pub constructions: Vec<Construction>,
    /// Parameter grid for open curves; segment constructions reuse its
    /// sample count over the unit interval.
    #[serde(default)]
    pub t_grid: TGrid,
}

/// Uniform sampling grid `start..=stop` with `count` points.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Default for TGrid {
    fn default() -> Self {
        Self { start: 0.0, stop: 1.0, count: 101 }
    }
}

impl TGrid {
    fn values(&self) -> Vec<f64> {
        if self.count <= 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }

    /// The same number of samples over the unit interval; used for
    /// segment-shaped constructions regardless of the open-curve range.
    fn unit_values(&self) -> Vec<f64> {
        let count = self.count.max(2);
        let step = 1.0 / (count - 1) as f64;
        (0..count).map(|i| step * i as f64).collect()
    }
}

/// One drawable construction; `id` names its rows in the output.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    /// The geodesic through `a` and `b`, sampled over the grid.
    Gyroline { id: String, a: String, b: String },
    /// The fourth vertex from `a`, `b`, `c`, with the four sides and
    /// both diagonals sampled as segments.
    Parallelogram { id: String, a: String, b: String, c: String },
    /// The doubled curve of the gyroline through `a` and `b`, with each
    /// row's distance to the supporting chord as its residual.
    DoubleGyroline { id: String, a: String, b: String },
    /// The supporting chord of the gyroline through `a` and `b`: the
    /// chord polyline plus the three theorem points, each with its
    /// distance to the chord line as residual.
    SupportingChord { id: String, a: String, b: String },
    /// The two boundary points of the gyroline through `a` and `b`,
    /// with `| |E| − radius |` as residual.
    Endpoints { id: String, a: String, b: String },
}

impl Construction {
    pub fn id(&self) -> &str {
        match self {
            Construction::Gyroline { id, .. }
            | Construction::Parallelogram { id, .. }
            | Construction::DoubleGyroline { id, .. }
            | Construction::SupportingChord { id, .. }
            | Construction::Endpoints { id, .. } => id,
        }
    }

    fn point_names(&self) -> Vec<&str> {
        match self {
            Construction::Gyroline { a, b, .. }
            | Construction::DoubleGyroline { a, b, .. }
            | Construction::SupportingChord { a, b, .. }
            | Construction::Endpoints { a, b, .. } => vec![a, b],
            Construction::Parallelogram { a, b, c, .. } => vec![a, b, c],
        }
    }
}

/// One sampled output point.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub construction_id: String,
    pub t: f64,
    pub coords: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

impl SceneSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let scene: SceneSpec = serde_json::from_str(text).map_err(|e| GyroError::DegenerateInput {
            detail: format!("scene is not valid JSON: {e}"),
        })?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    /// Checks ball parameters, point membership, and name references;
    /// returns the scene's model on success.
    pub fn validate(&self) -> Result<GyroModel> {
        let params = BallParams::new(self.dim, self.radius)?;
        let model = GyroModel::new(self.model, params);
        for (name, coords) in &self.points {
            BallPoint::new(params, coords.clone()).map_err(|e| GyroError::DegenerateInput {
                detail: format!("scene point '{name}': {e}"),
            })?;
        }
        if self.t_grid.count == 0 {
            return Err(GyroError::DegenerateInput {
                detail: "scene t_grid.count must be at least 1".into(),
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        for c in &self.constructions {
            if !seen.insert(c.id().to_string()) {
                return Err(GyroError::DegenerateInput {
                    detail: format!("scene has duplicate construction id '{}'", c.id()),
                });
            }
            for name in c.point_names() {
                if !self.points.contains_key(name) {
                    return Err(GyroError::DegenerateInput {
                        detail: format!(
                            "construction '{}' references undefined point '{name}'",
                            c.id()
                        ),
                    });
                }
            }
        }
        Ok(model)
    }

    fn resolve(&self, model: &GyroModel, name: &str) -> Result<BallPoint> {
        let coords = self.points.get(name).ok_or_else(|| GyroError::DegenerateInput {
            detail: format!("undefined point '{name}'"),
        })?;
        model.point(coords.clone())
    }

    /// Carries every named point to the other model through the
    /// half/double isomorphism and flips the model tag; constructions
    /// and the grid are kept.
    pub fn convert(&self, to: ModelKind) -> Result<SceneSpec> {
        if to == self.model {
            return Ok(self.clone());
        }
        let model = self.validate()?;
        let pair = crate::isomorphism::ModelPair::shared(model.params());
        let mut points = BTreeMap::new();
        for (name, coords) in &self.points {
            let p = model.point(coords.clone())?;
            let q = match (self.model, to) {
                (ModelKind::Mobius, ModelKind::Einstein) => pair.mobius_to_einstein(&p)?,
                (ModelKind::Einstein, ModelKind::Mobius) => pair.einstein_to_mobius(&p)?,
                _ => p,
            };
            points.insert(name.clone(), q.to_vec());
        }
        Ok(SceneSpec {
            model: to,
            dim: self.dim,
            radius: self.radius,
            points,
            constructions: self.constructions.clone(),
            t_grid: self.t_grid,
        })
    }

    /// Samples every construction into output rows.
    pub fn render(&self) -> Result<Vec<Row>> {
        let model = self.validate()?;
        let mut rows = Vec::new();
        for c in &self.constructions {
            match c {
                Construction::Gyroline { id, a, b } => {
                    let a = self.resolve(&model, a)?;
                    let b = self.resolve(&model, b)?;
                    let line = geometry::Gyroline::new(model, a, b)?;
                    for t in self.t_grid.values() {
                        let p = line.point(t)?;
                        rows.push(Row {
                            construction_id: id.clone(),
                            t,
                            coords: p.to_vec(),
                            residual: None,
                        });
                    }
                }
                Construction::Parallelogram { id, a, b, c } => {
                    let a = self.resolve(&model, a)?;
                    let b = self.resolve(&model, b)?;
                    let c = self.resolve(&model, c)?;
                    let par = geometry::gyroparallelogram_fourth(&model, &a, &b, &c)?;
                    let sides: [(&str, &BallPoint, &BallPoint); 6] = [
                        ("ab", &par.a, &par.b),
                        ("bd", &par.b, &par.d),
                        ("dc", &par.d, &par.c),
                        ("ca", &par.c, &par.a),
                        ("ad", &par.a, &par.d),
                        ("bc", &par.b, &par.c),
                    ];
                    for (suffix, p, q) in sides {
                        let segment = geometry::Gyroline::new(model, p.clone(), q.clone())?;
                        for t in self.t_grid.unit_values() {
                            let point = segment.point(t)?;
                            rows.push(Row {
                                construction_id: format!("{id}/{suffix}"),
                                t,
                                coords: point.to_vec(),
                                residual: None,
                            });
                        }
                    }
                }
                Construction::DoubleGyroline { id, a, b } => {
                    let a = self.resolve(&model, a)?;
                    let b = self.resolve(&model, b)?;
                    let chord_a = model.integer_mul(2, &a)?;
                    let chord_b = model.integer_mul(2, &b)?;
                    let line = geometry::Gyroline::new(model, a, b)?;
                    for t in self.t_grid.values() {
                        let p = geometry::double_gyroline(&line, t)?;
                        let residual =
                            distance_to_line(p.coords(), chord_a.coords(), chord_b.coords());
                        rows.push(Row {
                            construction_id: id.clone(),
                            t,
                            coords: p.to_vec(),
                            residual: Some(residual),
                        });
                    }
                }
                Construction::SupportingChord { id, a, b } => {
                    let a = self.resolve(&model, a)?;
                    let b = self.resolve(&model, b)?;
                    let (p1, p2, p3) = geometry::supporting_chord_points(&model, &a, &b)?;
                    let (e1, e2) = geometry::gyroline_endpoints(&model, &a, &b)?;
                    for (k, p) in [p1, p2, p3].iter().enumerate() {
                        let residual = distance_to_line(p.coords(), e1.coords(), e2.coords());
                        rows.push(Row {
                            construction_id: format!("{id}/points"),
                            t: k as f64,
                            coords: p.to_vec(),
                            residual: Some(residual),
                        });
                    }
                    for t in self.t_grid.unit_values() {
                        let coords = e1.coords() + (e2.coords() - e1.coords()) * t;
                        rows.push(Row {
                            construction_id: format!("{id}/chord"),
                            t,
                            coords: coords.iter().copied().collect(),
                            residual: None,
                        });
                    }
                }
                Construction::Endpoints { id, a, b } => {
                    let a = self.resolve(&model, a)?;
                    let b = self.resolve(&model, b)?;
                    let (e1, e2) = geometry::gyroline_endpoints(&model, &a, &b)?;
                    for (t, e) in [(0.0, e1), (1.0, e2)] {
                        rows.push(Row {
                            construction_id: id.clone(),
                            t,
                            coords: e.to_vec(),
                            residual: Some((e.norm() - self.radius).abs()),
                        });
                    }
                }
            }
        }
        Ok(rows)
    }
}

fn distance_to_line(p: &DVector<f64>, q1: &DVector<f64>, q2: &DVector<f64>) -> f64 {
    let dir = q2 - q1;
    let len = dir.norm();
    if len == 0.0 {
        return (p - q1).norm();
    }
    let u = dir / len;
    let rel = p - q1;
    (&rel - &u * rel.dot(&u)).norm()
}

fn fmt_f64(x: f64) -> String {
    let mut buf = ryu::Buffer::new();
    buf.format(x).to_string()
}

/// CSV with header `construction_id,t,x1..xn,residual`; numbers in
/// shortest round-trip form; missing residuals are empty fields.
pub fn rows_to_csv(rows: &[Row], dim: usize) -> String {
    let mut out = String::from("construction_id,t");
    for i in 1..=dim {
        out.push_str(&format!(",x{i}"));
    }
    out.push_str(",residual\n");
    for row in rows {
        out.push_str(&row.construction_id);
        out.push(',');
        out.push_str(&fmt_f64(row.t));
        for x in &row.coords {
            out.push(',');
            out.push_str(&fmt_f64(*x));
        }
        out.push(',');
        if let Some(r) = row.residual {
            out.push_str(&fmt_f64(r));
        }
        out.push('\n');
    }
    out
}

/// JSON document bundling the scene and its sampled rows.
pub fn rows_to_json(scene: &SceneSpec, rows: &[Row]) -> String {
    #[derive(Serialize)]
    struct Output<'a> {
        scene: &'a SceneSpec,
        rows: &'a [Row],
    }
    serde_json::to_string_pretty(&Output { scene, rows }).expect("rows serialize")
}

const SVG_SIZE: f64 = 640.0;
const SVG_MARGIN: f64 = 20.0;
const PALETTE: [&str; 6] = [
    "#1965b0", "#dc050c", "#4eb265", "#b17ba6", "#f1932d", "#555555",
];

/// Static SVG picture of a planar scene: the boundary circle, each
/// construction as a polyline (or markers), and the named points with
/// labels. Only `dim == 2` scenes can be drawn.
pub fn render_svg(scene: &SceneSpec, rows: &[Row]) -> Result<String> {
    if scene.dim != 2 {
        return Err(GyroError::DimensionMismatch {
            expected: 2,
            got: scene.dim,
        });
    }
    let scale = (SVG_SIZE / 2.0 - SVG_MARGIN) / scene.radius;
    let map = |x: f64, y: f64| -> (f64, f64) {
        (SVG_SIZE / 2.0 + x * scale, SVG_SIZE / 2.0 - y * scale)
    };
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n",
        size = SVG_SIZE
    ));
    svg.push_str(&format!(
        "  <rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>\n",
        size = SVG_SIZE
    ));
    svg.push_str(&format!(
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1.5\"/>\n",
        SVG_SIZE / 2.0,
        SVG_SIZE / 2.0,
        scene.radius * scale
    ));

    // Group rows by construction id, keeping first-appearance order.
    let mut order: Vec<&str> = Vec::new();
    let mut groups: BTreeMap<&str, Vec<&Row>> = BTreeMap::new();
    for row in rows {
        let entry = groups.entry(row.construction_id.as_str()).or_default();
        if entry.is_empty() {
            order.push(row.construction_id.as_str());
        }
        entry.push(row);
    }
    for (k, id) in order.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let group = &groups[id];
        if group.len() <= 3 {
            for row in group {
                let (cx, cy) = map(row.coords[0], row.coords[1]);
                svg.push_str(&format!(
                    "  <circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"4\" fill=\"{color}\"><title>{id} t={t}</title></circle>\n",
                    t = fmt_f64(row.t)
                ));
            }
            continue;
        }
        let mut points = String::new();
        for row in group {
            let (cx, cy) = map(row.coords[0], row.coords[1]);
            if !points.is_empty() {
                points.push(' ');
            }
            points.push_str(&format!("{cx:.3},{cy:.3}"));
        }
        svg.push_str(&format!(
            "  <polyline points=\"{points}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"><title>{id}</title></polyline>\n"
        ));
    }

    for (name, coords) in &scene.points {
        let (cx, cy) = map(coords[0], coords[1]);
        svg.push_str(&format!(
            "  <circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"3.5\" fill=\"#111111\"/>\n"
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.3}\" y=\"{:.3}\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#111111\">{name}</text>\n",
            cx + 7.0,
            cy - 7.0
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
