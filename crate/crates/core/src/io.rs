//! Machine serialization: one JSON document per machine, canonical on save.
//!
//! Canonical form: object keys sorted, floats printed with 17 significant
//! digits in lowercase scientific notation (exact f64 round-trip), compact
//! whitespace, trailing newline. Complex numbers are `[re, im]` pairs,
//! matrices row-major nested arrays, and per-(state, symbol) tables are
//! objects keyed by `"state,symbol"` index strings.

use crate::equivalence::Blm;
use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, ComplexVector};
use crate::machines::{Dfa, KLetterQfa, MmQfa, MoQfa, Qfac, QfaCl};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

pub const FORMAT_VERSION: u64 = 1;

/// Any machine the document format can carry, tagged by its `kind` string.
#[derive(Clone, Debug)]
pub enum Machine {
    Dfa(Dfa),
    Mo(MoQfa),
    Mm(MmQfa),
    KLetter(KLetterQfa),
    QfaCl(QfaCl),
    Qfac(Qfac),
    Blm(Blm),
}

impl Machine {
    pub fn kind(&self) -> &'static str {
        match self {
            Machine::Dfa(_) => "dfa",
            Machine::Mo(_) => "mo1qfa",
            Machine::Mm(_) => "mm1qfa",
            Machine::KLetter(_) => "kletter",
            Machine::QfaCl(_) => "qfacl",
            Machine::Qfac(_) => "qfac",
            Machine::Blm(_) => "blm",
        }
    }

    pub fn alphabet(&self) -> &[String] {
        match self {
            Machine::Dfa(m) => m.alphabet(),
            Machine::Mo(m) => m.alphabet(),
            Machine::Mm(m) => m.alphabet(),
            Machine::KLetter(m) => m.alphabet(),
            Machine::QfaCl(m) => m.alphabet(),
            Machine::Qfac(m) => m.alphabet(),
            Machine::Blm(m) => m.alphabet(),
        }
    }
}

macro_rules! machine_from {
    ($variant:ident, $ty:ty) => {
        impl From<$ty> for Machine {
            fn from(m: $ty) -> Machine {
                Machine::$variant(m)
            }
        }
    };
}
machine_from!(Dfa, Dfa);
machine_from!(Mo, MoQfa);
machine_from!(Mm, MmQfa);
machine_from!(KLetter, KLetterQfa);
machine_from!(QfaCl, QfaCl);
machine_from!(Qfac, Qfac);
machine_from!(Blm, Blm);

// ---------------------------------------------------------------- writing

/// Compact JSON writer that prints every float as `{:.16e}`.
struct CanonicalFormatter;

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

fn complex_value(c: Complex64) -> Value {
    json!([c.re, c.im])
}

fn vector_value(v: &ComplexVector) -> Value {
    Value::Array(v.iter().map(|&c| complex_value(c)).collect())
}

fn matrix_value(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| complex_value(m[(i, j)])).collect()))
            .collect(),
    )
}

fn dfa_body(d: &Dfa) -> Value {
    json!({
        "alphabet": d.alphabet(),
        "transitions": d.transitions(),
        "initial": d.initial(),
        "accepting": (0..d.state_count()).map(|s| d.is_accepting(s)).collect::<Vec<_>>(),
    })
}

fn indexed_map<F: Fn(usize, usize) -> Value>(rows: usize, cols: usize, f: F) -> Value {
    let mut map = Map::new();
    for r in 0..rows {
        for c in 0..cols {
            map.insert(format!("{r},{c}"), f(r, c));
        }
    }
    Value::Object(map)
}

/// The machine as a `{format_version, kind, body}` JSON document.
pub fn machine_to_document(machine: &Machine) -> Value {
    let body = match machine {
        Machine::Dfa(d) => dfa_body(d),
        Machine::Mo(m) => json!({
            "alphabet": m.alphabet(),
            "initial_state": vector_value(m.initial_state()),
            "unitaries": (0..m.alphabet().len())
                .map(|s| matrix_value(m.unitary(s)))
                .collect::<Vec<_>>(),
            "accepting_projector": matrix_value(m.accepting_proj()),
        }),
        Machine::Mm(m) => json!({
            "alphabet": m.alphabet(),
            "initial_state": vector_value(m.initial_state()),
            "unitaries": (0..m.alphabet().len())
                .map(|s| matrix_value(m.unitary(s)))
                .collect::<Vec<_>>(),
            "end_unitary": matrix_value(m.end_unitary()),
            "accept_projector": matrix_value(m.accepting_proj()),
            "reject_projector": matrix_value(m.reject_proj()),
            "continue_projector": matrix_value(m.nonhalt_proj()),
        }),
        Machine::KLetter(m) => json!({
            "k": m.k(),
            "alphabet": m.alphabet(),
            "initial_state": vector_value(m.initial_state()),
            "nu": m.windows()
                .map(|(w, u)| json!({"window": w, "matrix": matrix_value(u)}))
                .collect::<Vec<_>>(),
            "accepting_projector": matrix_value(m.accepting_proj()),
        }),
        Machine::QfaCl(m) => json!({
            "alphabet": m.alphabet(),
            "initial_state": vector_value(m.initial_state()),
            "unitaries": (0..m.alphabet().len())
                .map(|s| matrix_value(m.unitary(s)))
                .collect::<Vec<_>>(),
            "end_unitary": matrix_value(m.end_unitary()),
            "outcomes": m.outcomes(),
            "projectors": (0..m.outcomes().len())
                .map(|g| matrix_value(m.projector(g)))
                .collect::<Vec<_>>(),
            "control": dfa_body(m.control()),
        }),
        Machine::Qfac(m) => json!({
            "alphabet": m.alphabet(),
            "outcomes": m.outcomes(),
            "initial_classical": m.initial_classical(),
            "initial_quantum": vector_value(m.initial_quantum()),
            "delta": indexed_map(m.classical_count(), m.alphabet().len(), |s, a| {
                json!(m.classical_step(s, a))
            }),
            "unitaries": indexed_map(m.classical_count(), m.alphabet().len(), |s, a| {
                matrix_value(m.unitary(s, a))
            }),
            "measurements": indexed_map(m.classical_count(), m.outcomes().len(), |s, g| {
                matrix_value(m.measurement(s, g))
            }),
        }),
        Machine::Blm(b) => json!({
            "alphabet": b.alphabet(),
            "pi": vector_value(b.pi()),
            "step": (0..b.alphabet().len())
                .map(|s| matrix_value(b.step(s)))
                .collect::<Vec<_>>(),
            "eta": vector_value(b.eta()),
        }),
    };
    json!({
        "format_version": FORMAT_VERSION,
        "kind": machine.kind(),
        "body": body,
    })
}

/// Canonical document text: sorted keys, `{:.16e}` floats, trailing newline.
pub fn to_canonical_json(machine: &Machine) -> String {
    let doc = machine_to_document(machine);
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
    doc.serialize(&mut ser).expect("serializing a finite document cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serializer emits UTF-8")
}

pub fn save_machine(machine: &Machine, path: impl AsRef<Path>) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(to_canonical_json(machine).as_bytes())?;
    Ok(())
}

// ---------------------------------------------------------------- reading

fn want<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::validation(format!("{path}.{key}"), "missing field"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::validation(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::validation(path, "expected an array"))
}

fn as_string(v: &Value, path: &str) -> Result<String> {
    Ok(v.as_str().ok_or_else(|| Error::validation(path, "expected a string"))?.to_string())
}

fn as_index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::validation(path, "expected a non-negative integer"))
}

fn as_bool(v: &Value, path: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| Error::validation(path, "expected a boolean"))
}

fn as_f64(v: &Value, path: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| Error::validation(path, "expected a number"))
}

fn parse_complex(v: &Value, path: &str) -> Result<Complex64> {
    let pair = as_array(v, path)?;
    if pair.len() != 2 {
        return Err(Error::validation(path, "complex number must be [re, im]"));
    }
    Ok(Complex64::new(
        as_f64(&pair[0], path)?,
        as_f64(&pair[1], path)?,
    ))
}

fn parse_vector(v: &Value, path: &str) -> Result<ComplexVector> {
    let entries = as_array(v, path)?;
    let mut data = Vec::with_capacity(entries.len());
    for (i, e) in entries.iter().enumerate() {
        data.push(parse_complex(e, &format!("{path}.{i}"))?);
    }
    Ok(ComplexVector::new(data))
}

fn parse_matrix(v: &Value, path: &str) -> Result<ComplexMatrix> {
    let rows = as_array(v, path)?;
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row_path = format!("{path}.{i}");
        let entries = as_array(row, &row_path)?;
        let mut r = Vec::with_capacity(entries.len());
        for (j, e) in entries.iter().enumerate() {
            r.push(parse_complex(e, &format!("{row_path}.{j}"))?);
        }
        parsed.push(r);
    }
    ComplexMatrix::from_rows(parsed)
        .map_err(|e| Error::validation(path, format!("not a rectangular finite matrix: {e}")))
}

fn parse_string_list(v: &Value, path: &str) -> Result<Vec<String>> {
    let entries = as_array(v, path)?;
    entries
        .iter()
        .enumerate()
        .map(|(i, e)| as_string(e, &format!("{path}.{i}")))
        .collect()
}

fn parse_matrix_list(v: &Value, path: &str) -> Result<Vec<ComplexMatrix>> {
    let entries = as_array(v, path)?;
    entries
        .iter()
        .enumerate()
        .map(|(i, e)| parse_matrix(e, &format!("{path}.{i}")))
        .collect()
}

/// Reads an object keyed by "r,c" index strings into a rows×cols table,
/// requiring every key exactly once.
fn parse_indexed<T>(
    v: &Value,
    rows: usize,
    cols: usize,
    path: &str,
    parse: impl Fn(&Value, &str) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    let obj = as_object(v, path)?;
    let mut table: Vec<Vec<Option<T>>> = (0..rows).map(|_| (0..cols).map(|_| None).collect()).collect();
    for (key, val) in obj {
        let entry_path = format!("{path}.{key}");
        let (r, c) = key
            .split_once(',')
            .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
            .ok_or_else(|| Error::validation(&entry_path, "key must be \"row,col\" indices"))?;
        if r >= rows || c >= cols {
            return Err(Error::validation(
                &entry_path,
                format!("index out of range for a {rows}x{cols} table"),
            ));
        }
        table[r][c] = Some(parse(val, &entry_path)?);
    }
    let mut result = Vec::with_capacity(rows);
    for (r, row) in table.into_iter().enumerate() {
        let mut out = Vec::with_capacity(cols);
        for (c, cell) in row.into_iter().enumerate() {
            out.push(cell.ok_or_else(|| {
                Error::validation(path, format!("missing entry \"{r},{c}\""))
            })?);
        }
        result.push(out);
    }
    Ok(result)
}

fn parse_dfa(body: &Map<String, Value>, path: &str) -> Result<Dfa> {
    let alphabet = parse_string_list(want(body, "alphabet", path)?, &format!("{path}.alphabet"))?;
    let transitions_val = as_array(want(body, "transitions", path)?, &format!("{path}.transitions"))?;
    let mut transitions = Vec::with_capacity(transitions_val.len());
    for (i, row) in transitions_val.iter().enumerate() {
        let row_path = format!("{path}.transitions.{i}");
        let entries = as_array(row, &row_path)?;
        let mut r = Vec::with_capacity(entries.len());
        for (j, e) in entries.iter().enumerate() {
            r.push(as_index(e, &format!("{row_path}.{j}"))?);
        }
        transitions.push(r);
    }
    let initial = as_index(want(body, "initial", path)?, &format!("{path}.initial"))?;
    let accepting_val = as_array(want(body, "accepting", path)?, &format!("{path}.accepting"))?;
    let accepting = accepting_val
        .iter()
        .enumerate()
        .map(|(i, e)| as_bool(e, &format!("{path}.accepting.{i}")))
        .collect::<Result<Vec<_>>>()?;
    Dfa::new(alphabet, transitions, initial, accepting)
}

fn parse_body(kind: &str, body: &Value) -> Result<Machine> {
    let path = "body";
    let obj = as_object(body, path)?;
    match kind {
        "dfa" => Ok(Machine::Dfa(parse_dfa(obj, path)?)),
        "mo1qfa" => {
            let alphabet = parse_string_list(want(obj, "alphabet", path)?, "body.alphabet")?;
            let initial = parse_vector(want(obj, "initial_state", path)?, "body.initial_state")?;
            let unitaries = parse_matrix_list(want(obj, "unitaries", path)?, "unitaries")?;
            let proj = parse_matrix(want(obj, "accepting_projector", path)?, "body.accepting_projector")?;
            Ok(Machine::Mo(MoQfa::new(alphabet, initial, unitaries, proj)?))
        }
        "mm1qfa" => {
            let alphabet = parse_string_list(want(obj, "alphabet", path)?, "body.alphabet")?;
            let initial = parse_vector(want(obj, "initial_state", path)?, "body.initial_state")?;
            let unitaries = parse_matrix_list(want(obj, "unitaries", path)?, "unitaries")?;
            let end = parse_matrix(want(obj, "end_unitary", path)?, "body.end_unitary")?;
            let acc = parse_matrix(want(obj, "accept_projector", path)?, "body.accept_projector")?;
            let rej = parse_matrix(want(obj, "reject_projector", path)?, "body.reject_projector")?;
            let non = parse_matrix(want(obj, "continue_projector", path)?, "body.continue_projector")?;
            Ok(Machine::Mm(MmQfa::new(alphabet, initial, unitaries, end, acc, rej, non)?))
        }
        "kletter" => {
            let k = as_index(want(obj, "k", path)?, "body.k")?;
            let alphabet = parse_string_list(want(obj, "alphabet", path)?, "body.alphabet")?;
            let initial = parse_vector(want(obj, "initial_state", path)?, "body.initial_state")?;
            let entries = as_array(want(obj, "nu", path)?, "body.nu")?;
            let mut nu = BTreeMap::new();
            for (i, entry) in entries.iter().enumerate() {
                let entry_path = format!("body.nu.{i}");
                let e = as_object(entry, &entry_path)?;
                let window_val = as_array(want(e, "window", &entry_path)?, &format!("{entry_path}.window"))?;
                let mut window = Vec::with_capacity(window_val.len());
                for (j, w) in window_val.iter().enumerate() {
                    window.push(match w {
                        Value::Null => None,
                        other => Some(as_index(other, &format!("{entry_path}.window.{j}"))?),
                    });
                }
                let matrix = parse_matrix(want(e, "matrix", &entry_path)?, &format!("{entry_path}.matrix"))?;
                if nu.insert(window, matrix).is_some() {
                    return Err(Error::validation(&entry_path, "duplicate window"));
                }
            }
            let proj = parse_matrix(want(obj, "accepting_projector", path)?, "body.accepting_projector")?;
            Ok(Machine::KLetter(KLetterQfa::new(k, alphabet, initial, nu, proj)?))
        }
        "qfacl" => {
            let alphabet = parse_string_list(want(obj, "alphabet", path)?, "body.alphabet")?;
            let initial = parse_vector(want(obj, "initial_state", path)?, "body.initial_state")?;
            let unitaries = parse_matrix_list(want(obj, "unitaries", path)?, "unitaries")?;
            let end = parse_matrix(want(obj, "end_unitary", path)?, "body.end_unitary")?;
            let outcomes = parse_string_list(want(obj, "outcomes", path)?, "body.outcomes")?;
            let projectors = parse_matrix_list(want(obj, "projectors", path)?, "projectors")?;
            let control = parse_dfa(
                as_object(want(obj, "control", path)?, "body.control")?,
                "body.control",
            )?;
            Ok(Machine::QfaCl(QfaCl::new(
                alphabet, initial, unitaries, end, outcomes, projectors, control,
            )?))
        }
        "qfac" => {
            let alphabet = parse_string_list(want(obj, "alphabet", path)?, "body.alphabet")?;
            let outcomes = parse_string_list(want(obj, "outcomes", path)?, "body.outcomes")?;
            let initial_classical =
                as_index(want(obj, "initial_classical", path)?, "body.initial_classical")?;
            let initial_quantum =
                parse_vector(want(obj, "initial_quantum", path)?, "body.initial_quantum")?;
            let delta_obj = want(obj, "delta", path)?;
            let states = as_object(delta_obj, "body.delta")?
                .keys()
                .filter_map(|k| k.split_once(',').and_then(|(a, _)| a.parse::<usize>().ok()))
                .max()
                .map_or(0, |m| m + 1);
            let delta = parse_indexed(delta_obj, states, alphabet.len(), "body.delta", as_index)?;
            let unitaries = parse_indexed(
                want(obj, "unitaries", path)?,
                states,
                alphabet.len(),
                "unitaries",
                parse_matrix,
            )?;
            let measurements = parse_indexed(
                want(obj, "measurements", path)?,
                states,
                outcomes.len(),
                "measurements",
                parse_matrix,
            )?;
            Ok(Machine::Qfac(Qfac::new(
                alphabet,
                outcomes,
                initial_classical,
                initial_quantum,
                delta,
                unitaries,
                measurements,
            )?))
        }
        "blm" => {
            let alphabet = parse_string_list(want(obj, "alphabet", path)?, "body.alphabet")?;
            let pi = parse_vector(want(obj, "pi", path)?, "body.pi")?;
            let step = parse_matrix_list(want(obj, "step", path)?, "step")?;
            let eta = parse_vector(want(obj, "eta", path)?, "body.eta")?;
            Ok(Machine::Blm(Blm::new(alphabet, pi, step, eta)?))
        }
        other => Err(Error::validation(
            "kind",
            format!("unknown machine kind `{other}`"),
        )),
    }
}

/// Validates and builds the machine a `{format_version, kind, body}`
/// document declares.
pub fn document_to_machine(doc: &Value) -> Result<Machine> {
    let obj = as_object(doc, "document")?;
    let version = as_index(want(obj, "format_version", "document")?, "format_version")?;
    if version as u64 != FORMAT_VERSION {
        return Err(Error::validation(
            "format_version",
            format!("unsupported version {version}, expected {FORMAT_VERSION}"),
        ));
    }
    let kind = as_string(want(obj, "kind", "document")?, "kind")?;
    parse_body(&kind, want(obj, "body", "document")?)
}

/// Parses document text into a validated machine.
pub fn parse_machine(text: &str) -> Result<Machine> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
    document_to_machine(&doc)
}

pub fn load_machine(path: impl AsRef<Path>) -> Result<Machine> {
    let text = std::fs::read_to_string(path)?;
    parse_machine(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        build_l0_dfa, build_l0m_dfa, build_l0m_qfac, build_lzm_dfa, build_rotation_mo1qfa,
        dfa_to_qfac,
    };
    use crate::equivalence::bilinearize;
    use crate::linalg::rotation;
    use crate::machines::reachable_windows;
    use crate::random::{random_measurement, random_qfac, random_state, random_unitary};
    use crate::words::words_up_to;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alphabet01() -> Vec<String> {
        vec!["0".into(), "1".into()]
    }

    fn sample_mm(rng: &mut ChaCha8Rng) -> MmQfa {
        let dim = 3;
        let ranks = vec![1, 1, 1];
        let projs = random_measurement(rng, dim, &ranks);
        MmQfa::new(
            alphabet01(),
            random_state(rng, dim),
            vec![random_unitary(rng, dim), random_unitary(rng, dim)],
            random_unitary(rng, dim),
            projs[0].clone(),
            projs[1].clone(),
            projs[2].clone(),
        )
        .unwrap()
    }

    fn sample_kletter() -> KLetterQfa {
        let mut nu = BTreeMap::new();
        for w in reachable_windows(2, 2) {
            let m = if w[1] == Some(1) { rotation(std::f64::consts::FRAC_PI_2) } else { ComplexMatrix::identity(2) };
            nu.insert(w, m);
        }
        KLetterQfa::new(
            2,
            alphabet01(),
            ComplexVector::basis_state(2, 0),
            nu,
            ComplexMatrix::outer(
                &ComplexVector::basis_state(2, 1),
                &ComplexVector::basis_state(2, 1),
            ),
        )
        .unwrap()
    }

    fn sample_qfacl(rng: &mut ChaCha8Rng) -> QfaCl {
        let outcomes: Vec<String> = vec!["p".into(), "m".into()];
        let projs = random_measurement(rng, 2, &[1, 1]);
        let control = Dfa::new(
            outcomes.clone(),
            vec![vec![1, 0], vec![0, 1]],
            0,
            vec![false, true],
        )
        .unwrap();
        QfaCl::new(
            alphabet01(),
            random_state(rng, 2),
            vec![random_unitary(rng, 2), random_unitary(rng, 2)],
            random_unitary(rng, 2),
            outcomes,
            projs,
            control,
        )
        .unwrap()
    }

    fn assert_round_trip(machine: Machine) {
        let text = to_canonical_json(&machine);
        let reloaded = parse_machine(&text).unwrap();
        assert_eq!(reloaded.kind(), machine.kind());
        let again = to_canonical_json(&reloaded);
        assert_eq!(text, again, "canonical text must be a fixed point");
    }

    #[test]
    fn every_kind_round_trips_to_identical_bytes() {
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        assert_round_trip(Machine::Dfa(build_lzm_dfa(&[0, 1], 2, alphabet01()).unwrap()));
        assert_round_trip(Machine::Mo(build_rotation_mo1qfa(3, alphabet01()).unwrap()));
        assert_round_trip(Machine::Mm(sample_mm(&mut rng)));
        assert_round_trip(Machine::KLetter(sample_kletter()));
        assert_round_trip(Machine::QfaCl(sample_qfacl(&mut rng)));
        assert_round_trip(Machine::Qfac(random_qfac(&mut rng, 2, 2, &["a", "r"])));
        assert_round_trip(Machine::Blm(
            bilinearize(&build_l0m_qfac(2).unwrap(), "a").unwrap(),
        ));
    }

    #[test]
    fn golden_document_for_the_ends_in_zero_machine() {
        let text = to_canonical_json(&Machine::Dfa(build_l0_dfa()));
        assert_eq!(
            text,
            "{\"body\":{\"accepting\":[false,true],\"alphabet\":[\"0\",\"1\"],\
             \"initial\":0,\"transitions\":[[1,0],[1,0]]},\"format_version\":1,\
             \"kind\":\"dfa\"}\n"
        );
        let loaded = parse_machine(&text).unwrap();
        match loaded {
            Machine::Dfa(d) => assert!(d.accepts(&[1, 0]).unwrap()),
            other => panic!("expected a dfa, got {}", other.kind()),
        }
    }

    #[test]
    fn reload_preserves_probabilities_bit_for_bit() {
        let mut rng = ChaCha8Rng::seed_from_u64(92);
        for _ in 0..10 {
            let a = random_qfac(&mut rng, 2, 2, &["a", "r"]);
            let text = to_canonical_json(&Machine::Qfac(a.clone()));
            let Machine::Qfac(b) = parse_machine(&text).unwrap() else {
                panic!("expected qfac");
            };
            for w in words_up_to(2, 3) {
                assert_eq!(a.outcome_probs(&w).unwrap(), b.outcome_probs(&w).unwrap());
            }
        }
    }

    #[test]
    fn seventeen_digit_floats_survive_extreme_values() {
        let v = ComplexVector::new(vec![
            Complex64::new(1.0 / 3.0, -2.0_f64.powi(-40)),
            Complex64::new(0.0, 1e300),
            Complex64::new(f64::MIN_POSITIVE, -1.0),
        ]);
        let as_text = to_canonical_json(&Machine::Blm(
            Blm::new(
                vec!["a".into()],
                v.clone(),
                vec![ComplexMatrix::identity(3)],
                v.clone(),
            )
            .unwrap(),
        ));
        let Machine::Blm(b) = parse_machine(&as_text).unwrap() else { panic!() };
        assert_eq!(b.pi().as_slice(), v.as_slice());
    }

    #[test]
    fn invalid_documents_name_the_offending_field() {
        let mut doc = machine_to_document(&Machine::Mo(
            build_rotation_mo1qfa(3, alphabet01()).unwrap(),
        ));
        doc["body"]["unitaries"][0] = json!([[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [2.0, 0.0]]]);
        let err = document_to_machine(&doc).unwrap_err();
        assert!(err.to_string().contains("unitaries.0"), "got: {err}");

        let err = parse_machine("{not json").unwrap_err();
        assert!(matches!(err, Error::Parse(_)));

        let err = parse_machine("{\"format_version\":1,\"kind\":\"nope\",\"body\":{}}").unwrap_err();
        assert!(err.to_string().contains("kind"), "got: {err}");

        let err = parse_machine("{\"format_version\":9,\"kind\":\"dfa\",\"body\":{}}").unwrap_err();
        assert!(err.to_string().contains("format_version"), "got: {err}");

        let mut doc = machine_to_document(&Machine::Qfac(dfa_to_qfac(&build_l0m_dfa(2).unwrap())));
        doc["body"]["unitaries"].as_object_mut().unwrap().remove("1,0");
        let err = document_to_machine(&doc).unwrap_err();
        assert!(err.to_string().contains("missing entry \"1,0\""), "got: {err}");
    }

    #[test]
    fn save_and_load_work_through_the_filesystem() {
        let dir = std::env::temp_dir().join(format!("qfa-io-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("l0m3.json");
        let machine = Machine::Dfa(build_l0m_dfa(3).unwrap());
        save_machine(&machine, &path).unwrap();
        let loaded = load_machine(&path).unwrap();
        match loaded {
            Machine::Dfa(d) => assert_eq!(d.state_count(), 4),
            other => panic!("expected a dfa, got {}", other.kind()),
        }
        assert!(matches!(
            save_machine(&machine, dir.join("missing").join("x.json")),
            Err(Error::Io(_))
        ));
        assert!(matches!(load_machine(dir.join("absent.json")), Err(Error::Io(_))));
        std::fs::remove_dir_all(&dir).ok();
    }
}
