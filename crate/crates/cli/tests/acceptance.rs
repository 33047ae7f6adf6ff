//! Acceptance: CLI and HTTP determinism and documented error codes.
//!
//! Run with `cargo test -p motionforge-cli --test acceptance`.

use std::process::{Command, ExitCode};

use axum::body::{to_bytes, Body};
use axum::http::{Request, StatusCode};
use motionforge_cli::documents::MotionDocument;
use motionforge_cli::service::router;
use motionforge_cli::ERROR_CODES;
use motionforge_core::{DualQuaternion, MotionPolynomial, Quaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::value::RawValue;
use serde_json::{json, Value};
use tower::ServiceExt;

fn random_point(rng: &mut ChaCha8Rng) -> [f64; 3] {
    [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]
}

fn random_pose(rng: &mut ChaCha8Rng) -> DualQuaternion {
    let p = Quaternion::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    );
    DualQuaternion::from_rotation_translation(p.scale(1.0 / p.length()), random_point(rng))
}

fn cubic_poses(rng: &mut ChaCha8Rng) -> Vec<[f64; 8]> {
    let mut c = MotionPolynomial::constant(random_pose(rng));
    for _ in 0..3 {
        let frame = random_pose(rng);
        let rot = Quaternion::new(rng.gen_range(-1.0..1.0), 0.0, 0.0, rng.gen_range(0.5..2.0));
        let h = frame * DualQuaternion::from(rot) * frame.inverse().unwrap();
        c = &c * &MotionPolynomial::linear(h);
    }
    std::iter::once(c.leading())
        .chain([-1.0, 0.5, 2.0].iter().map(|&t| c.eval(t)))
        .map(|d| d.to_array())
        .collect()
}

fn tasks(rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut out = Vec::new();
    for _ in 0..10 {
        let pts = |rng: &mut ChaCha8Rng, n| (0..n).map(|_| random_point(rng)).collect::<Vec<_>>();
        out.push(json!({"schema_version": "1", "task": {"scheme": "points5", "points": pts(rng, 5)}}));
        out.push(json!({"schema_version": "1", "task": {"scheme": "points7", "points": pts(rng, 7)}}));
        out.push(json!({"schema_version": "1", "task": {
            "scheme": "pointsGeneric", "points": pts(rng, 5),
            "via_times": [0.0, 0.4, 1.0], "secondary_times": [0.2, 0.7]}}));
        let poses: Vec<[f64; 8]> = (0..3).map(|_| random_pose(rng).to_array()).collect();
        out.push(json!({"schema_version": "1", "task": {"scheme": "poses3", "poses": poses}}));
        let poses = cubic_poses(rng);
        out.push(json!({"schema_version": "1", "task": {"scheme": "poses4", "poses": poses}}));
        out.push(json!({"schema_version": "1", "task": {"scheme": "poses4", "poses": poses},
            "options": {"branch": "k2", "lambda": 11.5}}));
    }
    out.into_iter().map(|v| v.to_string()).collect()
}

struct Scratch(std::path::PathBuf);

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

/// CLI run: (exit code, output file bytes, error code).
fn cli(dir: &std::path::Path, task: &str, tag: usize) -> (i32, Vec<u8>, Option<String>) {
    let input = dir.join(format!("task{tag}.json"));
    let output = dir.join(format!("motion{tag}.json"));
    std::fs::write(&input, task).unwrap();
    let _ = std::fs::remove_file(&output);
    let out = Command::new(env!("CARGO_BIN_EXE_motionforge"))
        .arg("interpolate")
        .arg(&input)
        .arg("-o")
        .arg(&output)
        .env_remove("MOTIONFORGE_TOLERANCE")
        .output()
        .unwrap();
    let code = serde_json::from_slice::<Value>(&out.stderr)
        .ok()
        .and_then(|v| v["error"]["code"].as_str().map(String::from));
    (out.status.code().unwrap_or(-1), std::fs::read(&output).unwrap_or_default(), code)
}

/// HTTP run: (status, raw motion JSON, error code).
async fn http(task: &str) -> (StatusCode, String, Option<String>) {
    let req = Request::post("/api/interpolate").body(Body::from(task.to_string())).unwrap();
    let resp = router().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    #[derive(Deserialize)]
    struct Ok<'a> {
        #[serde(borrow)]
        motion: &'a RawValue,
    }
    match serde_json::from_slice::<Ok>(&bytes) {
        Result::Ok(ok) => (status, ok.motion.get().to_string(), None),
        Err(_) => {
            let v: Value = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
            (status, String::new(), v["error"]["code"].as_str().map(String::from))
        }
    }
}

fn failing_tasks() -> Vec<String> {
    let p = |x: f64| [x, 0.5 * x, -x];
    let one = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    vec![
        "{".into(),
        json!({"schema_version": "2", "task": {"scheme": "points5", "points": [p(0.), p(1.), p(2.), p(3.), p(4.)]}}).to_string(),
        json!({"schema_version": "1", "task": {"scheme": "points7", "points": [p(0.), p(1.)]}}).to_string(),
        json!({"schema_version": "1", "task": {"scheme": "points9", "points": []}}).to_string(),
        json!({"schema_version": "1", "task": {"scheme": "poses4", "poses": [one, one, one, one]}, "options": {"branch": "k3"}}).to_string(),
        json!({"schema_version": "1", "task": {"scheme": "points5", "points": [p(0.), p(0.), [0., 1., 0.], [1., 1., 0.], [0., 0., 1.]]}}).to_string(),
        json!({"schema_version": "1", "task": {"scheme": "poses4", "poses": [one, one, one, one]}}).to_string(),
        json!({"schema_version": "1", "task": {"scheme": "poses3", "poses": [one, [1., 0., 0., 0., 0., 1., 0., 0.], [1., 0., 0., 0., 0., 2., 0., 0.]]}}).to_string(),
        json!({"schema_version": "1", "task": {"scheme": "pointsGeneric", "points": [p(0.), p(1.), p(2.)], "via_times": [0.0, 0.0], "secondary_times": [0.5]}}).to_string(),
    ]
}

fn main() -> ExitCode {
    let runtime = tokio::runtime::Builder::new_current_thread().build().unwrap();
    let dir = std::env::temp_dir().join(format!("motionforge-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let _guard = Scratch(dir.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(201);

    let all = tasks(&mut rng);
    let mut identical = 0;
    let mut round_trip = 0;
    let mut problems = Vec::new();
    for (k, task) in all.iter().enumerate() {
        let (exit, file, _) = cli(&dir, task, k);
        let (status, motion, _) = runtime.block_on(http(task));
        let (_, again, _) = cli(&dir, task, k);
        let file_text = String::from_utf8_lossy(&file);
        if exit == 0 && status == StatusCode::OK && file_text.trim_end() == motion && file == again {
            identical += 1;
        } else {
            problems.push(format!("task {k}: exit {exit}, status {status}"));
        }
        if let Ok(doc) = MotionDocument::parse(&motion) {
            if doc.to_json() == motion {
                round_trip += 1;
            }
        }
    }

    let mut codes_ok = 0;
    let failing = failing_tasks();
    for (k, task) in failing.iter().enumerate() {
        let (exit, _, cli_code) = cli(&dir, task, 1000 + k);
        let (status, _, http_code) = runtime.block_on(http(task));
        let documented = cli_code.as_deref().is_some_and(|c| ERROR_CODES.contains(&c));
        let consistent = cli_code == http_code
            && matches!((exit, status.as_u16()), (2, 400) | (3, 422));
        if documented && consistent {
            codes_ok += 1;
        } else {
            problems.push(format!("failing task {k}: cli {exit} {cli_code:?}, http {status} {http_code:?}"));
        }
    }

    let passed = identical == all.len() && round_trip == all.len() && codes_ok == failing.len();
    println!(
        "{} CLI/service determinism: {identical}/{} byte-identical motion documents, {round_trip}/{} exact round trips, \
         {codes_ok}/{} failures with documented and consistent error codes",
        if passed { "PASS" } else { "FAIL" },
        all.len(),
        all.len(),
        failing.len()
    );
    for p in &problems {
        println!("  {p}");
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
