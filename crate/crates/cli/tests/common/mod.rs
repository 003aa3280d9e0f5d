#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn lines(&self) -> Vec<Value> {
        self.stdout
            .lines()
            .map(|l| serde_json::from_str(l).expect("stdout is JSON lines"))
            .collect()
    }

    pub fn last(&self) -> Value {
        self.lines().pop().expect("at least one line")
    }

    pub fn of_kind(&self, kind: &str) -> Vec<Value> {
        self.lines()
            .into_iter()
            .filter(|v| v["kind"] == kind)
            .collect()
    }

    /// Stderr diagnostics other than timing.
    pub fn diagnostics(&self) -> Vec<Value> {
        self.stderr
            .lines()
            .map(|l| serde_json::from_str::<Value>(l).expect("stderr is JSON lines"))
            .filter(|v| v["kind"] != "timing")
            .collect()
    }
}

pub fn upd(args: &[&str]) -> Run {
    upd_env(args, &[])
}

pub fn upd_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_upd"))
        .args(args)
        .envs(env.iter().copied())
        .env_remove("UPD_JOBS")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

pub fn family(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "families", name]
        .iter()
        .collect();
    path.to_str().expect("utf-8 path").to_owned()
}

pub fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|s| s.as_str().expect("string").to_owned())
        .collect()
}
