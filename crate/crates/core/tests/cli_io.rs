use std::path::{Path, PathBuf};
use std::process::Command;

use cqseqdec::cli::{execute, run, EXIT_INVALID, EXIT_OK};
use cqseqdec::decoder::{Codebook, CqChannel};
use cqseqdec::io::{self, ResultRecord};
use cqseqdec::linalg::{basis_projector, max_abs, DensityOperator, HermitianOperator, Sampler, Seed};

struct Workspace {
    dir: tempfile::TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn state(&self, name: &str, rho: &DensityOperator) -> String {
        let p = self.path(name);
        io::save_state(&p, rho).unwrap();
        p.display().to_string()
    }

    fn channel(&self, name: &str, channel: &CqChannel, prior: &[f64]) -> String {
        let p = self.path(name);
        io::save_channel(&p, channel, prior).unwrap();
        p.display().to_string()
    }

    fn operators(&self, name: &str, ops: &[HermitianOperator]) -> String {
        let p = self.path(name);
        io::save_operators(&p, ops).unwrap();
        p.display().to_string()
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    }
}

fn ok(args: &[&str]) -> ResultRecord {
    let mut full = vec!["cqseqdec"];
    full.extend_from_slice(args);
    let o = run(full);
    assert_eq!(o.exit_code, EXIT_OK, "{args:?}: {:?}", o.message);
    o.record.unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    let mut full = vec!["cqseqdec"];
    full.extend_from_slice(args);
    run(full).exit_code
}

#[test]
fn channel_round_trip() {
    let ws = Workspace::new();
    let mut s = Sampler::new(Seed(1));
    let outputs: Vec<_> = (0..3).map(|_| s.state(3).unwrap()).collect();
    let channel = CqChannel::new(vec!["a".into(), "b".into(), "c".into()], outputs).unwrap();
    let prior = [0.2, 0.3, 0.5];
    let path = ws.channel("ch.json", &channel, &prior);
    let (back, back_prior) = io::load_channel(&path).unwrap();
    assert_eq!(back.symbols(), channel.symbols());
    for (x, y) in back.outputs().iter().zip(channel.outputs()) {
        assert!(max_abs(&(x.matrix() - y.matrix())) < 1e-12);
    }
    for (p, q) in back_prior.iter().zip(&prior) {
        assert!((p - q).abs() < 1e-12);
    }

    let codebook = Codebook::new(vec![2, 0, 2, 1], &channel).unwrap();
    let cb_path = ws.path("cb.json");
    io::save_codebook(&cb_path, &codebook, &channel).unwrap();
    assert_eq!(io::load_codebook(&cb_path, &channel).unwrap(), codebook);

    let povm = s.povm(3, 3).unwrap();
    let povm_path = ws.path("povm.json");
    io::save_povm(&povm_path, &povm).unwrap();
    let back = io::load_povm(&povm_path).unwrap();
    for (x, y) in back.elements().iter().zip(povm.elements()) {
        assert!(max_abs(&(x.matrix() - y.matrix())) < 1e-12);
    }
}

#[test]
fn channel_file_diagnostics() {
    let ws = Workspace::new();
    let template = r#"{"dim_b": 1, "inputs": [
        {"symbol": "x", "prob": P0, "state": [[[1, 0]]]},
        {"symbol": "y", "prob": P1, "state": STATE}]}"#;
    let file = |p0: &str, p1: &str, state: &str| {
        template.replace("P0", p0).replace("P1", p1).replace("STATE", state)
    };
    let good = ws.write("good.json", &file("0.5", "0.499999999", "[[[1, 0]]]"));
    assert!(io::load_channel(&good).is_ok());
    let bad_sum = ws.write("sum.json", &file("0.5", "0.4", "[[[1, 0]]]"));
    let err = io::load_channel(&bad_sum).unwrap_err();
    assert!(err.to_string().contains("prior sum"), "{err}");
    let bad_state = ws.write("psd.json", &file("0.5", "0.5", "[[[-1, 0]]]"));
    let err = io::load_channel(&bad_state).unwrap_err();
    assert!(err.to_string().contains("\"y\""), "{err}");
    let malformed = ws.write("bad.json", "{\"dim_b\": 1, \"inputs\": [");
    assert!(matches!(io::load_channel(&malformed), Err(cqseqdec::Error::Parse(_))));
}

#[test]
fn hypotest_wiring() {
    let ws = Workspace::new();
    let mut s = Sampler::new(Seed(2));
    let r = ws.state("r.json", &s.state(3).unwrap());
    let sg = ws.state("s.json", &s.state(3).unwrap());
    let rec = ok(&["hypotest", "--rho", &r, "--sigma", &sg, "--eps", "0.1", "--dual-check"]);
    for key in ["beta", "d_h_bits", "duality_gap"] {
        assert!(rec.real_output(key).is_some(), "missing {key}");
    }
    assert!(rec.real_output("duality_gap").unwrap().abs() <= 1e-7);

    let same = ok(&["hypotest", "--rho", &r, "--sigma", &r, "--eps", "0.3"]);
    assert!((same.real_output("d_h_bits").unwrap() + 0.7f64.log2()).abs() < 1e-9);
}

#[test]
fn infinite_divergence_is_written_as_string() {
    let ws = Workspace::new();
    let zero = ws.state("0.json", &DensityOperator::new(basis_projector(2, 0)).unwrap());
    let one = ws.state("1.json", &DensityOperator::new(basis_projector(2, 1)).unwrap());
    let out = ws.path("out.json");
    let out_s = out.display().to_string();
    let code = execute(["cqseqdec", "hypotest", "--rho", &zero, "--sigma", &one, "--eps", "0", "--out", &out_s]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"d_h_bits\": \"inf\""), "{text}");
    let rec = ResultRecord::load(&out).unwrap();
    assert_eq!(rec.real_output("d_h_bits"), Some(f64::INFINITY));
    assert_eq!(rec.to_json(), text);
}

#[test]
fn dilate_reports_unitary_and_statistics() {
    let ws = Workspace::new();
    let mut s = Sampler::new(Seed(3));
    let povm = s.povm(3, 4).unwrap();
    let povm_path = ws.operators("povm.json", povm.elements());
    let rho = ws.state("rho.json", &s.state(3).unwrap());
    let rec = ok(&["dilate", "--povm", &povm_path, "--rho", &rho]);
    assert_eq!(rec.outputs["probe_dim"], 4);
    assert!(rec.real_output("unitarity_defect").unwrap() < 1e-9);
    assert!(rec.real_output("max_deviation").unwrap() < 1e-9);

    let binary = s.binary_povm(2).unwrap();
    let pair = [binary.accept().complement(), binary.accept().clone()];
    let bin_path = ws.operators("bin.json", &pair);
    let rec = ok(&["dilate", "--povm", &bin_path, "--binary"]);
    assert_eq!(rec.outputs["unitary"].as_array().unwrap().len(), 4);
    assert_eq!(exit_code(&["dilate", "--povm", &povm_path, "--binary"]), EXIT_INVALID);
}

#[test]
fn decode_modes_agree() {
    let ws = Workspace::new();
    let channel = CqChannel::pure_qubit_pair(0.5).unwrap();
    let ch = ws.channel("ch.json", &channel, &[0.5, 0.5]);
    let cb = ws.write("cb.json", r#"{"codewords": ["0", "1", "1"]}"#);
    let base = ["decode", "--channel", &ch, "--codebook", &cb, "--eps-prime", "0.05"];
    let exact = ok(&[&base[..], &["--mode", "exact"]].concat());
    let exact_err = exact.real_output("average_error").unwrap();
    for mode in ["dilated", "coherent"] {
        let rec = ok(&[&base[..], &["--mode", mode]].concat());
        assert!((rec.real_output("average_error").unwrap() - exact_err).abs() < 1e-9, "{mode}");
    }
    let traj = ok(&[&base[..], &["--mode", "trajectory", "--trials", "20000", "--seed", "4"]].concat());
    assert!((traj.real_output("average_error").unwrap() - exact_err).abs() < 0.02);
    assert!(exact.real_output("min_union_slack").unwrap() >= -1e-8);
}

#[test]
fn coherent_mode_rejects_mixed_outputs() {
    let ws = Workspace::new();
    let channel = CqChannel::from_outputs(vec![DensityOperator::maximally_mixed(2); 2]).unwrap();
    let ch = ws.channel("ch.json", &channel, &[0.5, 0.5]);
    let cb = ws.write("cb.json", r#"{"codewords": ["0", "1"]}"#);
    let code = exit_code(&["decode", "--channel", &ch, "--codebook", &cb, "--eps-prime", "0.1", "--mode", "coherent"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn bounds_check_lemma_sweep() {
    let rec = ok(&["bounds-check", "--suite", "lemma31", "--instances", "1000", "--seed", "7"]);
    assert!(rec.real_output("min_slack").unwrap() >= -1e-8);
    assert_eq!(rec.outputs["violations"], 0);
    assert!(rec.real_output("max_dilation_deviation").unwrap() < 1e-9);
}

#[test]
fn capacity_command() {
    let ws = Workspace::new();
    let channel = CqChannel::from_outputs(vec![
        DensityOperator::new(basis_projector(2, 0)).unwrap(),
        DensityOperator::new(basis_projector(2, 1)).unwrap(),
    ])
    .unwrap();
    let ch = ws.channel("bit.json", &channel, &[0.5, 0.5]);
    let rec = ok(&[
        "capacity", "--channel", &ch, "--eps", "0.4", "--eps-prime-grid", "0.005:0.035:0.005", "--prior-grid", "simplex:10",
    ]);
    assert_eq!(rec.outputs["grid_points"], 77);
    assert!(rec.real_output("bits").unwrap().is_finite());
    let code = exit_code(&["capacity", "--channel", &ch, "--eps", "0.4", "--eps-prime-grid", "0.01:0.05:0.01"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn gentle_command_schemes() {
    let ws = Workspace::new();
    let mut s = Sampler::new(Seed(5));
    let rho = ws.state("rho.json", &s.state(4).unwrap());
    let effects: Vec<_> = (0..3).map(|_| s.effect(4).unwrap()).collect();
    let projectors: Vec<_> = (0..3).map(|_| s.projector(4, 3).unwrap()).collect();
    let eff = ws.operators("eff.json", &effects);
    let proj = ws.operators("proj.json", &projectors);
    for scheme in ["gentle", "dilated"] {
        let rec = ok(&["gentle", "--rho", &rho, "--ops", &eff, "--scheme", scheme]);
        assert!(rec.real_output("min_slack").unwrap() >= -1e-8);
    }
    for scheme in ["polar", "forward-backward"] {
        let rec = ok(&["gentle", "--rho", &rho, "--ops", &proj, "--scheme", scheme]);
        assert!(rec.real_output("slack").unwrap() >= -1e-8);
    }
    assert_eq!(exit_code(&["gentle", "--rho", &rho, "--ops", &eff, "--scheme", "polar"]), EXIT_INVALID);
}

#[test]
fn experiment_command() {
    let ws = Workspace::new();
    let ch = ws.channel("ch.json", &CqChannel::pure_qubit_pair(0.5).unwrap(), &[0.5, 0.5]);
    let rec = ok(&[
        "experiment", "--channel", &ch, "--messages", "2", "--eps-prime", "0.01", "--trials", "1000", "--seed", "7",
    ]);
    let err = rec.real_output("empirical_error").unwrap();
    let bound = rec.real_output("analytic_bound").unwrap();
    assert!(rec.real_output("stderr").unwrap() > 0.0);
    assert!(err <= bound);
    assert_eq!(rec.outputs["bound_holds"], true);
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cqseqdec"))
}

fn write_binary_povm(ws: &Workspace, d: usize) -> String {
    let mut s = Sampler::new(Seed(9));
    let b = s.binary_povm(d).unwrap();
    ws.operators("bin.json", &[b.accept().complement(), b.accept().clone()])
}

#[test]
fn binary_honours_dimension_cap() {
    let ws = Workspace::new();
    let povm = write_binary_povm(&ws, 3);
    let status = binary()
        .args(["dilate", "--povm", &povm, "--binary"])
        .env("CQSEQDEC_MAX_DIM", "4")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_INVALID));
    assert!(String::from_utf8_lossy(&status.stderr).contains("exceeds"));
    let status = binary()
        .args(["dilate", "--povm", &povm, "--binary"])
        .env("CQSEQDEC_MAX_DIM", "6")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    let rec = ResultRecord::from_json(&String::from_utf8(status.stdout).unwrap()).unwrap();
    assert_eq!(rec.command, "dilate");
    let status = binary()
        .args(["dilate", "--povm", &povm, "--binary"])
        .env("CQSEQDEC_MAX_DIM", "lots")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_INVALID));
}

#[test]
fn binary_writes_out_file() {
    let ws = Workspace::new();
    let povm = write_binary_povm(&ws, 2);
    let out = ws.path("u.json");
    let status = binary()
        .args(["dilate", "--povm", &povm, "--binary", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(Path::new(&out).exists());
    assert_eq!(ResultRecord::load(&out).unwrap().command, "dilate");
}
