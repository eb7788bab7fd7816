//! Line-oriented plain-text trajectory formats.
//!
//! Pose trajectories: one `t qw qx qy qz tx ty tz` record per line. Joint
//! trajectories: `t q_1.. q_J qd_1.. qd_J`. Both start with a `#` header
//! naming fields, units, and frame; floats are written in Rust's shortest
//! round-trip form, so write→read is bitwise lossless.

use std::fs;
use std::path::Path;

use thiserror::Error;
use twin_ident_core::dynamics::{JointSample, JointTrajectory};
use twin_ident_core::geometry::{Pose, PoseTrajectory, Quat};
use twin_ident_core::Vec3;

pub const POSE_HEADER: &str = "# t[s] qw qx qy qz tx[m] ty[m] tz[m] frame=world";
pub const JOINT_HEADER: &str = "# t[s] q[rad]... qd[rad/s]... layout=positions-then-velocities";

#[derive(Debug, Error)]
pub enum TrajError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn io_err(path: &Path, source: std::io::Error) -> TrajError {
    TrajError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> TrajError {
    TrajError::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Serialize a pose trajectory to text (see [`POSE_HEADER`]).
pub fn format_pose_trajectory(traj: &PoseTrajectory) -> String {
    let mut out = String::with_capacity(64 * traj.len());
    out.push_str(POSE_HEADER);
    out.push('\n');
    for (t, pose) in traj.samples() {
        let q = pose.rotation;
        let tr = pose.translation;
        out.push_str(&format!(
            "{} {} {} {} {} {} {} {}\n",
            t, q.w, q.x, q.y, q.z, tr.x, tr.y, tr.z
        ));
    }
    out
}

pub fn write_pose_trajectory(path: &Path, traj: &PoseTrajectory) -> Result<(), TrajError> {
    fs::write(path, format_pose_trajectory(traj)).map_err(|e| io_err(path, e))
}

pub fn parse_pose_trajectory(path: &Path, text: &str) -> Result<PoseTrajectory, TrajError> {
    let mut samples = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 8 {
            return Err(parse_err(
                path,
                line_no,
                format!("expected 8 fields (t qw qx qy qz tx ty tz), got {}", fields.len()),
            ));
        }
        let mut v = [0.0f64; 8];
        for (i, f) in fields.iter().enumerate() {
            v[i] = f
                .parse()
                .map_err(|_| parse_err(path, line_no, format!("invalid number `{f}`")))?;
        }
        let q = Quat::new(v[1], v[2], v[3], v[4]);
        samples.push((v[0], Pose::new(q, Vec3::new(v[5], v[6], v[7]))));
    }
    PoseTrajectory::new(samples).map_err(|e| TrajError::Invalid {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn read_pose_trajectory(path: &Path) -> Result<PoseTrajectory, TrajError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_pose_trajectory(path, &text)
}

/// Serialize a joint trajectory to text (see [`JOINT_HEADER`]).
pub fn format_joint_trajectory(traj: &JointTrajectory) -> String {
    let mut out = String::with_capacity(64 * traj.len());
    out.push_str(JOINT_HEADER);
    out.push('\n');
    for s in traj.samples() {
        out.push_str(&s.time.to_string());
        for q in &s.positions {
            out.push(' ');
            out.push_str(&q.to_string());
        }
        for qd in &s.velocities {
            out.push(' ');
            out.push_str(&qd.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn write_joint_trajectory(path: &Path, traj: &JointTrajectory) -> Result<(), TrajError> {
    fs::write(path, format_joint_trajectory(traj)).map_err(|e| io_err(path, e))
}

pub fn parse_joint_trajectory(path: &Path, text: &str) -> Result<JointTrajectory, TrajError> {
    let mut samples: Vec<JointSample> = Vec::new();
    let mut joints: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let j = match joints {
            Some(j) => {
                if fields.len() != 1 + 2 * j {
                    return Err(parse_err(
                        path,
                        line_no,
                        format!("expected {} fields for {} joints, got {}", 1 + 2 * j, j, fields.len()),
                    ));
                }
                j
            }
            None => {
                if fields.len() < 3 || fields.len() % 2 == 0 {
                    return Err(parse_err(
                        path,
                        line_no,
                        format!(
                            "expected an odd field count of at least 3 (t, J positions, J velocities), got {}",
                            fields.len()
                        ),
                    ));
                }
                let j = (fields.len() - 1) / 2;
                joints = Some(j);
                j
            }
        };
        let mut values = Vec::with_capacity(fields.len());
        for f in &fields {
            values.push(
                f.parse::<f64>()
                    .map_err(|_| parse_err(path, line_no, format!("invalid number `{f}`")))?,
            );
        }
        samples.push(JointSample {
            time: values[0],
            positions: values[1..1 + j].to_vec(),
            velocities: values[1 + j..].to_vec(),
        });
    }
    JointTrajectory::new(samples).map_err(|e| TrajError::Invalid {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn read_joint_trajectory(path: &Path) -> Result<JointTrajectory, TrajError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_joint_trajectory(path, &text)
}
