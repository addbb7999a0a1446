//! Fully connected ReLU networks `R^{n0} → R^{n1} → … → R^{nm} → R` with
//! exact rational parameters.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{strict_feasible, Affine, Polyhedron};
use crate::rational::{approx, format_rational, int, parse_rational, sign, snap_dyadic, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Activation {
    Relu,
    Identity,
}

/// One affine map `x ↦ Wx + b`, optionally followed by ReLU.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineLayer {
    pub weights: Vec<Vec<Rational>>,
    pub bias: Vec<Rational>,
    pub activation: Activation,
}

impl AffineLayer {
    pub fn new(weights: Vec<Vec<Rational>>, bias: Vec<Rational>, activation: Activation) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidNetwork("layer has no rows".into()));
        }
        if weights.len() != bias.len() {
            return Err(Error::InvalidNetwork(format!(
                "layer has {} weight rows but {} biases",
                weights.len(),
                bias.len()
            )));
        }
        let cols = weights[0].len();
        if cols == 0 {
            return Err(Error::InvalidNetwork("layer has zero input width".into()));
        }
        if let Some(row) = weights.iter().position(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch { layer: 0, row, expected: cols, got: weights[row].len() });
        }
        Ok(Self { weights, bias, activation })
    }

    /// Convenience constructor from integer rows `(w | b)`.
    pub fn from_ints(rows: &[&[i64]], activation: Activation) -> Result<Self> {
        let mut weights = Vec::new();
        let mut bias = Vec::new();
        for r in rows {
            let (b, w) = r.split_last().ok_or_else(|| Error::InvalidNetwork("empty row".into()))?;
            weights.push(w.iter().map(|&v| int(v)).collect());
            bias.push(int(*b));
        }
        Self::new(weights, bias, activation)
    }

    pub fn input_dim(&self) -> usize {
        self.weights[0].len()
    }

    pub fn output_dim(&self) -> usize {
        self.weights.len()
    }

    /// Pre-activation of neuron `i` as an affine form on the layer input.
    pub fn neuron(&self, i: usize) -> Affine {
        Affine::new(self.weights[i].clone(), self.bias[i].clone())
    }

    pub fn preactivation(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.output_dim()).map(|i| self.neuron(i).eval(x)).collect()
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        let z = self.preactivation(x);
        match self.activation {
            Activation::Relu => z.into_iter().map(relu).collect(),
            Activation::Identity => z,
        }
    }
}

fn relu(z: Rational) -> Rational {
    if z.is_positive() {
        z
    } else {
        Rational::zero()
    }
}

/// Per-neuron sign pattern of the pre-activations, concatenated over hidden layers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryLabel(pub Vec<i8>);

impl TernaryLabel {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Splits the label into per-layer blocks of the given widths.
    pub fn blocks(&self, widths: &[usize]) -> Vec<&[i8]> {
        let mut out = Vec::with_capacity(widths.len());
        let mut start = 0;
        for &w in widths {
            out.push(&self.0[start..start + w]);
            start += w;
        }
        out
    }

    /// Label face relation: `self` is a face of `other`.
    pub fn is_face_of(&self, other: &TernaryLabel) -> bool {
        self.0.iter().zip(&other.0).all(|(&d, &c)| d == 0 || d == c)
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&s| s == 0).count()
    }
}

impl fmt::Display for TernaryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(match s {
                1 => "+",
                -1 => "-",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

impl FromStr for TernaryLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                _ => Err(Error::InvalidNetwork(format!("bad label character `{c}`"))),
            })
            .collect::<Result<Vec<i8>>>()
            .map(TernaryLabel)
    }
}

/// Output of [`Network::evaluate`].
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Rational,
    /// Pre-activations of each hidden layer.
    pub preactivations: Vec<Vec<Rational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Gaussian,
    Uniform,
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" | "normal" => Ok(Scheme::Gaussian),
            "uniform" => Ok(Scheme::Uniform),
            _ => Err(Error::InvalidNetwork(format!("unknown sampling scheme `{s}`"))),
        }
    }
}

/// Fractional bits kept when a random weight is snapped to a dyadic rational.
/// Short numerators keep exact arithmetic on the resulting complexes cheap;
/// rounding is symmetric, so the sampled distribution stays symmetric.
pub const SAMPLE_BITS: u32 = 16;

impl Scheme {
    /// One symmetric sample snapped to a multiple of `2^-SAMPLE_BITS`.
    pub fn sample<R: Rng>(self, rng: &mut R) -> Rational {
        let x: f64 = match self {
            Scheme::Gaussian => rng.sample(StandardNormal),
            Scheme::Uniform => rng.gen_range(-1.0..=1.0),
        };
        snap_dyadic(x, SAMPLE_BITS)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Network {
    layers: Vec<AffineLayer>,
}

impl Network {
    /// Validates composition of dimensions and activations (ReLU on every
    /// hidden layer, identity on the scalar output layer).
    pub fn new(layers: Vec<AffineLayer>) -> Result<Self> {
        let (last, hidden) = layers
            .split_last()
            .ok_or_else(|| Error::InvalidNetwork("network has no layers".into()))?;
        if last.activation != Activation::Identity {
            return Err(Error::InvalidNetwork("output layer must not have an activation".into()));
        }
        if last.output_dim() != 1 {
            return Err(Error::InvalidNetwork(format!("output layer has width {}, expected 1", last.output_dim())));
        }
        for (i, l) in hidden.iter().enumerate() {
            if l.activation != Activation::Relu {
                return Err(Error::InvalidNetwork(format!("hidden layer {i} must use relu")));
            }
        }
        for (i, pair) in layers.windows(2).enumerate() {
            if pair[1].input_dim() != pair[0].output_dim() {
                return Err(Error::InvalidNetwork(format!(
                    "layer {} expects {} inputs but layer {} produces {}",
                    i + 1,
                    pair[1].input_dim(),
                    i,
                    pair[0].output_dim()
                )));
            }
        }
        Ok(Self { layers })
    }

    pub fn layers(&self) -> &[AffineLayer] {
        &self.layers
    }

    pub fn hidden_layers(&self) -> &[AffineLayer] {
        &self.layers[..self.layers.len() - 1]
    }

    pub fn output_layer(&self) -> &AffineLayer {
        self.layers.last().expect("validated non-empty")
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].input_dim()
    }

    /// Number of hidden layers.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn hidden_widths(&self) -> Vec<usize> {
        self.hidden_layers().iter().map(AffineLayer::output_dim).collect()
    }

    pub fn total_hidden(&self) -> usize {
        self.hidden_widths().iter().sum()
    }

    /// `(n0, n1, …, nm, 1)`.
    pub fn architecture(&self) -> Vec<usize> {
        std::iter::once(self.input_dim())
            .chain(self.layers.iter().map(AffineLayer::output_dim))
            .collect()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Evaluation> {
        if point.len() != self.input_dim() {
            return Err(Error::DimensionMismatch { expected: self.input_dim(), got: point.len() });
        }
        let mut x = point.to_vec();
        let mut preactivations = Vec::with_capacity(self.depth());
        for layer in self.hidden_layers() {
            let z = layer.preactivation(&x);
            x = z.iter().cloned().map(relu).collect();
            preactivations.push(z);
        }
        let value = self.output_layer().preactivation(&x).pop().expect("scalar output");
        Ok(Evaluation { value, preactivations })
    }

    pub fn value(&self, point: &[Rational]) -> Result<Rational> {
        self.evaluate(point).map(|e| e.value)
    }

    /// Fast floating-point evaluation for sampling-based oracles.
    pub fn value_f64(&self, point: &[f64]) -> f64 {
        let mut x = point.to_vec();
        for layer in &self.layers {
            let mut y: Vec<f64> = layer
                .weights
                .iter()
                .zip(&layer.bias)
                .map(|(row, b)| {
                    row.iter().zip(&x).map(|(w, v)| crate::rational::to_f64(w) * v).sum::<f64>()
                        + crate::rational::to_f64(b)
                })
                .collect();
            if layer.activation == Activation::Relu {
                y.iter_mut().for_each(|v| *v = v.max(0.0));
            }
            x = y;
        }
        x[0]
    }

    pub fn activation_pattern(&self, point: &[Rational]) -> Result<TernaryLabel> {
        let e = self.evaluate(point)?;
        Ok(TernaryLabel(e.preactivations.iter().flatten().map(sign).collect()))
    }

    /// The network computing `−F`.
    pub fn negated(&self) -> Network {
        let mut layers = self.layers.clone();
        let out = layers.last_mut().expect("validated non-empty");
        for row in &mut out.weights {
            row.iter_mut().for_each(|w| *w = -w.clone());
        }
        out.bias.iter_mut().for_each(|b| *b = -b.clone());
        Network { layers }
    }

    /// Two-layer network `⟨output, σ(first(x))⟩ + output_bias`.
    pub fn shallow(first: AffineLayer, output: Vec<Rational>, output_bias: Rational) -> Result<Network> {
        let first = AffineLayer { activation: Activation::Relu, ..first };
        let out = AffineLayer::new(vec![output], vec![output_bias], Activation::Identity)?;
        Network::new(vec![first, out])
    }

    pub fn to_json(&self) -> Value {
        let layers: Vec<Value> = self
            .layers
            .iter()
            .map(|l| {
                json!({
                    "weights": l.weights.iter().map(|r| r.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "bias": l.bias.iter().map(format_rational).collect::<Vec<_>>(),
                    "activation": match l.activation { Activation::Relu => "relu", Activation::Identity => "none" },
                })
            })
            .collect();
        json!({ "layers": layers })
    }

    pub fn from_json(value: &Value) -> Result<Network> {
        let layers = value
            .get("layers")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::MalformedJson("missing `layers` array".into()))?;
        let mut parsed = Vec::with_capacity(layers.len());
        let mut expected_cols = None;
        for (li, layer) in layers.iter().enumerate() {
            let rows = layer
                .get("weights")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::MalformedJson(format!("layer {li}: missing `weights` array")))?;
            let mut weights = Vec::with_capacity(rows.len());
            for (ri, row) in rows.iter().enumerate() {
                let row = row
                    .as_array()
                    .ok_or_else(|| Error::MalformedJson(format!("layer {li}, row {ri}: not an array")))?;
                let cols = *expected_cols.get_or_insert(row.len());
                if row.len() != cols {
                    return Err(Error::ShapeMismatch { layer: li, row: ri, expected: cols, got: row.len() });
                }
                weights.push(row.iter().map(json_rational).collect::<Result<Vec<_>>>()?);
            }
            let bias = layer
                .get("bias")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::MalformedJson(format!("layer {li}: missing `bias` array")))?
                .iter()
                .map(json_rational)
                .collect::<Result<Vec<_>>>()?;
            if bias.len() != weights.len() {
                return Err(Error::ShapeMismatch { layer: li, row: weights.len(), expected: weights.len(), got: bias.len() });
            }
            let activation = match layer.get("activation").and_then(Value::as_str) {
                Some("relu") => Activation::Relu,
                Some("none") | Some("identity") | Some("linear") => Activation::Identity,
                Some(other) => return Err(Error::MalformedJson(format!("layer {li}: unknown activation `{other}`"))),
                None if li + 1 == layers.len() => Activation::Identity,
                None => Activation::Relu,
            };
            expected_cols = Some(weights.len());
            let layer = AffineLayer::new(weights, bias, activation).map_err(|e| match e {
                Error::ShapeMismatch { row, expected, got, .. } => Error::ShapeMismatch { layer: li, row, expected, got },
                other => other,
            })?;
            parsed.push(layer);
        }
        Network::new(parsed)
    }

    pub fn from_json_str(text: &str) -> Result<Network> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
        Network::from_json(&value)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Network> {
        Network::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
        std::fs::write(path, text + "\n")?;
        Ok(())
    }
}

fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::MalformedJson(format!("expected a number or \"p/q\" string, found {other}"))),
    }
}

/// Point `((1−t²)/(1+t²), 2t/(1+t²))` of the unit circle.
fn circle_point(t: &Rational) -> (Rational, Rational) {
    let one = Rational::one();
    let d = &one + t * t;
    ((&one - t * t) / &d, (int(2) * t) / d)
}

/// Shallow network with `2n+2` lines tangent to the unit circle, cyclically
/// ordered and co-oriented outward, whose output weights alternate in sign.
/// The central polygon is a flat cell at level 0 with local H₁-complexity `n`.
///
/// Tangency points are rational: the normal at angle `πj/(n+1)` measured from
/// the positive y-axis is `(sin, cos) = (2t/(1+t²), (1−t²)/(1+t²))` with
/// `t ≈ tan(πj/(2n+2))`; antipodal normals use `−1/t`, so opposite lines stay parallel.
pub fn fan_network(n: usize) -> Network {
    assert!(n >= 1, "fan network needs n ≥ 1");
    let k = 2 * n + 2;
    let mut params: Vec<Option<Rational>> = vec![None; k];
    for j in 1..=n {
        let angle = std::f64::consts::PI * j as f64 / (2 * (n + 1)) as f64;
        let t = approx(angle.tan(), 1024);
        params[j - 1] = Some(t.clone());
        params[j + n] = Some(-t.recip());
    }
    // angle π gives t = ∞, angle 2π gives t = 0
    params[k - 1] = Some(Rational::zero());
    let mut weights = Vec::with_capacity(k);
    for p in &params {
        let (sin, cos) = match p {
            Some(t) => {
                let (c, s) = circle_point(t);
                (s, c)
            }
            None => (Rational::zero(), -Rational::one()),
        };
        weights.push(vec![sin, cos]);
    }
    let first = AffineLayer::new(weights, vec![-Rational::one(); k], Activation::Relu).expect("well-formed");
    let output = (1..=k).map(|j| if j % 2 == 0 { Rational::one() } else { -Rational::one() }).collect();
    Network::shallow(first, output, Rational::zero()).expect("well-formed")
}

/// Shallow network `R² → R^m → R` whose coarse bounded sublevel complexity is `m − 2`.
///
/// The hidden lines are tangent to the upper unit half circle, co-oriented
/// outward, so the far region above them is all-positive. They are indexed in
/// the order in which their unbounded ends are met when walking clockwise
/// from that region, and the output weights are `(−1, 2, −2, …, ±2, (−1)^m)`.
pub fn coarse_bound_network(m: usize) -> Network {
    assert!(m >= 3, "coarse bound network needs m ≥ 3");
    let mut weights = Vec::with_capacity(m);
    for i in 1..=m {
        // decreasing tangency angle in (0, π)
        let t = Rational::new(((m + 1 - i) as i64).into(), (i as i64).into());
        let (c, s) = circle_point(&t);
        weights.push(vec![c, s]);
    }
    let first = AffineLayer::new(weights, vec![-Rational::one(); m], Activation::Relu).expect("well-formed");
    let output = (1..=m)
        .map(|i| {
            let s = if i % 2 == 0 { 1 } else { -1 };
            if i == 1 {
                int(-1)
            } else if i == m {
                int(s)
            } else {
                int(2 * s)
            }
        })
        .collect();
    Network::shallow(first, output, Rational::zero()).expect("well-formed")
}

/// Output weights `s` such that in `⟨s, σ(layer(x))⟩` every edge leaving the
/// all-negative flat region through the facet of neuron `i` is oriented
/// outward iff `signs[i] = +1`. Neurons that support no facet get weight 0.
pub fn prescribe_edge_orientations(layer: &AffineLayer, signs: &[i8]) -> Result<Vec<Rational>> {
    if signs.len() != layer.output_dim() {
        return Err(Error::DimensionMismatch { expected: layer.output_dim(), got: signs.len() });
    }
    if signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::Precondition("orientation signs must be ±1".into()));
    }
    let forms: Vec<Affine> = (0..layer.output_dim()).map(|i| layer.neuron(i)).collect();
    if forms.iter().any(Affine::is_constant) {
        return Err(Error::Precondition("layer has a degenerate (constant) neuron".into()));
    }
    let distinct: std::collections::HashSet<Affine> = forms.iter().map(Affine::canonical).collect();
    if distinct.len() != forms.len() {
        return Err(Error::Precondition("layer has repeated hyperplanes".into()));
    }
    if !strict_feasible(&forms) {
        return Err(Error::Precondition("the all-negative region of the layer is empty".into()));
    }
    let n = layer.input_dim();
    let region = Polyhedron::new(n, vec![], forms.iter().map(Affine::neg).collect());
    let mut out = Vec::with_capacity(forms.len());
    for (i, f) in forms.iter().enumerate() {
        let facet = region.with_equalities(std::slice::from_ref(f));
        let supports = facet.dimension() == Some(n - 1);
        out.push(if supports { int(signs[i] as i64) } else { Rational::zero() });
    }
    Ok(out)
}

/// Deterministic random network. Hidden layers get ReLU, the output layer is affine.
pub fn random_network(arch: &[usize], seed: u64, scheme: Scheme) -> Result<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_network_with(arch, &mut rng, scheme)
}

pub fn random_network_with<R: Rng>(arch: &[usize], rng: &mut R, scheme: Scheme) -> Result<Network> {
    if arch.len() < 2 {
        return Err(Error::InvalidNetwork("architecture needs an input and an output width".into()));
    }
    if arch.contains(&0) {
        return Err(Error::InvalidNetwork("architecture widths must be positive".into()));
    }
    if *arch.last().unwrap() != 1 {
        return Err(Error::InvalidNetwork("output width must be 1".into()));
    }
    let mut layers = Vec::with_capacity(arch.len() - 1);
    for (li, w) in arch.windows(2).enumerate() {
        let (inp, out) = (w[0], w[1]);
        let mut weights = Vec::with_capacity(out);
        let mut bias = Vec::with_capacity(out);
        for _ in 0..out {
            weights.push((0..inp).map(|_| scheme.sample(rng)).collect());
            bias.push(scheme.sample(rng));
        }
        let activation = if li + 2 == arch.len() { Activation::Identity } else { Activation::Relu };
        layers.push(AffineLayer::new(weights, bias, activation)?);
    }
    Network::new(layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, vec_of};

    pub(crate) fn n1() -> Network {
        let first = AffineLayer::from_ints(&[&[1, 0, 0], &[0, 1, 0]], Activation::Relu).unwrap();
        Network::shallow(first, vec_of(&[1, 1]), int(0)).unwrap()
    }

    #[test]
    fn evaluates_n1() {
        let n = n1();
        assert_eq!(n.value(&vec_of(&[1, 2])).unwrap(), int(3));
        assert_eq!(n.value(&vec_of(&[-1, -2])).unwrap(), int(0));
        assert_eq!(n.value(&vec_of(&[-1, 2])).unwrap(), int(2));
        assert!(matches!(n.value(&vec_of(&[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn patterns_of_n1() {
        let n = n1();
        assert_eq!(n.activation_pattern(&vec_of(&[1, 2])).unwrap().to_string(), "++");
        assert_eq!(n.activation_pattern(&vec_of(&[-1, -2])).unwrap().to_string(), "--");
        assert_eq!(n.activation_pattern(&vec_of(&[0, 2])).unwrap().to_string(), "0+");
    }

    #[test]
    fn fan_one_is_exact() {
        let f = fan_network(1);
        let l = &f.layers()[0];
        let expected = [[1, 0], [0, -1], [-1, 0], [0, 1]];
        for (row, e) in l.weights.iter().zip(expected) {
            assert_eq!(row, &vec_of(&e));
        }
        assert_eq!(l.bias, vec_of(&[-1, -1, -1, -1]));
        assert_eq!(f.output_layer().weights[0], vec_of(&[-1, 1, -1, 1]));
        assert_eq!(f.output_layer().bias[0], int(0));
        assert_eq!(f.value(&vec_of(&[0, 0])).unwrap(), int(0));
    }

    #[test]
    fn fan_rows_are_unit_and_cyclic() {
        for n in 1..=4 {
            let f = fan_network(n);
            let rows = &f.layers()[0].weights;
            assert_eq!(rows.len(), 2 * n + 2);
            let mut prev = f64::NEG_INFINITY;
            for r in rows {
                assert_eq!(&r[0] * &r[0] + &r[1] * &r[1], int(1));
                // angle measured clockwise from the positive y-axis
                let a = crate::rational::to_f64(&r[0]).atan2(crate::rational::to_f64(&r[1]));
                let a = if a <= 0.0 { a + 2.0 * std::f64::consts::PI } else { a };
                assert!(a > prev);
                prev = a;
            }
            for j in 0..=n {
                let (a, b) = (&rows[j], &rows[j + n + 1]);
                assert_eq!(a[0], -b[0].clone());
                assert_eq!(a[1], -b[1].clone());
            }
        }
    }

    #[test]
    fn coarse_bound_weights() {
        let w = |m| coarse_bound_network(m).output_layer().weights[0].clone();
        assert_eq!(w(4), vec_of(&[-1, 2, -2, 1]));
        assert_eq!(w(5), vec_of(&[-1, 2, -2, 2, -1]));
        assert_eq!(w(3), vec_of(&[-1, 2, -1]));
    }

    #[test]
    fn prescribed_orientations() {
        let l = fan_network(1).layers()[0].clone();
        assert_eq!(prescribe_edge_orientations(&l, &[1, 1, 1, 1]).unwrap(), vec_of(&[1, 1, 1, 1]));
        assert_eq!(prescribe_edge_orientations(&l, &[-1, -1, -1, -1]).unwrap(), vec_of(&[-1, -1, -1, -1]));
        assert_eq!(prescribe_edge_orientations(&l, &[-1, 1, -1, 1]).unwrap(), vec_of(&[-1, 1, -1, 1]));
        let bad = AffineLayer::from_ints(&[&[1, 0], &[-1, 0]], Activation::Relu).unwrap();
        assert!(matches!(prescribe_edge_orientations(&bad, &[1, 1]), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_network(&[2, 3, 1], 42, Scheme::Gaussian).unwrap();
        let b = random_network(&[2, 3, 1], 42, Scheme::Gaussian).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.layers()[0].weights.len(), 3);
        assert_eq!(a.layers()[0].weights[0].len(), 2);
        assert_eq!(a.layers()[1].weights.len(), 1);
        assert_eq!(a.layers()[1].weights[0].len(), 3);
        assert_ne!(a, random_network(&[2, 3, 1], 43, Scheme::Gaussian).unwrap());
        assert!(random_network(&[], 1, Scheme::Uniform).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = fan_network(2);
        let back = Network::from_json_str(&f.to_json().to_string()).unwrap();
        assert_eq!(f, back);

        let text = r#"{"layers":[{"weights":[["1/3", 0.5]],"bias":[1e-2],"activation":"relu"},
                                 {"weights":[[1]],"bias":[0],"activation":"none"}]}"#;
        let n = Network::from_json_str(text).unwrap();
        assert_eq!(n.layers()[0].weights[0][0], frac(1, 3));
        assert_eq!(n.layers()[0].weights[0][1], frac(1, 2));
        assert_eq!(n.layers()[0].bias[0], frac(1, 100));
        let again = Network::from_json_str(&n.to_json().to_string()).unwrap();
        assert_eq!(again.layers()[0].weights[0][0], frac(1, 3));
    }

    #[test]
    fn json_errors_are_distinct() {
        let ragged = r#"{"layers":[{"weights":[["1","2"],["3"]],"bias":["0","0"],"activation":"relu"},
                                   {"weights":[["1","1"]],"bias":["0"],"activation":"none"}]}"#;
        match Network::from_json_str(ragged) {
            Err(Error::ShapeMismatch { layer: 0, row: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let zero = r#"{"layers":[{"weights":[["1/0"]],"bias":["0"],"activation":"none"}]}"#;
        assert!(matches!(Network::from_json_str(zero), Err(Error::ZeroDenominator(_))));
        assert!(matches!(Network::from_json_str("{"), Err(Error::MalformedJson(_))));
    }

    #[test]
    fn negation() {
        let f = fan_network(1);
        let g = f.negated();
        let p = vec_of(&[3, -2]);
        assert_eq!(g.value(&p).unwrap(), -f.value(&p).unwrap());
    }
}
