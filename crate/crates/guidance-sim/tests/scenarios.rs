//! Cross-checks between the production sensor models and the
//! independent references in `oracle`, plus the material laws and
//! whole-run determinism.

use guidance_core::sensors::UltrasonicReading;
use guidance_sim::oracle::{scanline_brute, wedge_distance_brute};
use guidance_sim::raycast::render_depth_scanline;
use guidance_sim::scenario::{run_scenario, EngineConfig, Limits};
use guidance_sim::scene::{DepthSensorConfig, Material, Obstacle, Pose, Rect, Scene, Vec2};
use guidance_sim::ultrasound::{min_wedge_distance, simulate_ultrasonic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_material(rng: &mut ChaCha8Rng) -> Material {
    match rng.random_range(0..3) {
        0 => Material::Opaque,
        1 => Material::IrTransparent,
        _ => Material::Frosted,
    }
}

fn random_scene(rng: &mut ChaCha8Rng) -> Scene {
    let bounds = Rect::new(-6.0, -6.0, 6.0, 6.0);
    let n = rng.random_range(0..6);
    let obstacles = (0..n)
        .map(|_| {
            let x0 = rng.random_range(-5.0..4.5);
            let y0 = rng.random_range(-5.0..4.5);
            let w = rng.random_range(0.05..2.5f64).min(6.0 - x0 - 0.01);
            let d = rng.random_range(0.05..2.5f64).min(6.0 - y0 - 0.01);
            Obstacle {
                footprint: Rect::new(x0, y0, x0 + w, y0 + d),
                height: rng.random_range(0.05..2.5),
                material: random_material(rng),
            }
        })
        .collect();
    Scene {
        bounds,
        obstacles,
        start: Pose::default(),
        goal: Vec2::new(5.0, 5.0),
    }
}

fn random_pose(rng: &mut ChaCha8Rng) -> Pose {
    Pose {
        position: Vec2::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0)),
        yaw_rad: rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
        camera_height_m: rng.random_range(1.2..1.9),
        camera_pitch_rad: rng.random_range(0.35..0.65),
    }
}

#[test]
fn raycaster_matches_the_edge_walking_reference() {
    let k = guidance_core::geometry::CameraIntrinsics::default();
    let cfg = DepthSensorConfig {
        noise_enabled: false,
        ..DepthSensorConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..500 {
        let scene = random_scene(&mut rng);
        let pose = random_pose(&mut rng);
        let line = render_depth_scanline(&scene, &pose, &k, &cfg, &mut rng).unwrap();
        let reference = scanline_brute(&scene, &pose, &k, &cfg);
        for (col, (got, want)) in line.samples().iter().zip(&reference).enumerate() {
            match (got, want) {
                (Some(a), Some(b)) => {
                    assert!((a - b).abs() < 1e-6, "case {case} col {col}: {a} vs {b}")
                }
                (None, None) => {}
                _ => panic!("case {case} col {col}: {got:?} vs {want:?}"),
            }
        }
    }
}

#[test]
fn ultrasonic_wedge_matches_the_closed_form_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for case in 0..500 {
        let scene = random_scene(&mut rng);
        let origin = Vec2::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0));
        let center = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let half = rng.random_range(0.05..0.6);
        for min_height in [0.0, 0.3] {
            let got = min_wedge_distance(&scene.obstacles, origin, center, half, min_height);
            let want = wedge_distance_brute(&scene.obstacles, origin, center, half, min_height);
            match (got, want) {
                (Some(a), Some(b)) => {
                    assert!((a - b).abs() < 1e-9, "case {case}: {a} vs {b}")
                }
                (None, None) => {}
                _ => panic!("case {case}: {got:?} vs {want:?}"),
            }
        }
    }
}

#[test]
fn ultrasonic_reading_is_the_gated_wedge_minimum() {
    let engine = EngineConfig::default();
    let ucfg = &engine.ultrasonic;
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..500 {
        let scene = random_scene(&mut rng);
        let pose = random_pose(&mut rng);
        let got = simulate_ultrasonic(&scene, &pose, ucfg);
        let truth = wedge_distance_brute(
            &scene.obstacles,
            pose.position,
            pose.yaw_rad,
            ucfg.half_fov_rad,
            0.0,
        );
        match truth {
            Some(d) if d <= ucfg.max_range_m => {
                let UltrasonicReading::Distance(m) = got else {
                    panic!("expected a distance, got {got:?}");
                };
                assert!((m - d.max(ucfg.min_range_m)).abs() < 1e-9, "{m} vs {d}");
            }
            _ => assert_eq!(got, UltrasonicReading::MaxRange),
        }
    }
}

#[test]
fn frosting_an_opaque_obstacle_never_changes_the_depth_line() {
    let k = guidance_core::geometry::CameraIntrinsics::default();
    let cfg = DepthSensorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..200 {
        let mut scene = random_scene(&mut rng);
        if scene.obstacles.is_empty() {
            continue;
        }
        let pose = random_pose(&mut rng);
        let idx = rng.random_range(0..scene.obstacles.len());
        scene.obstacles[idx].material = Material::Opaque;
        let mut noise = ChaCha8Rng::seed_from_u64(7);
        let opaque = render_depth_scanline(&scene, &pose, &k, &cfg, &mut noise).unwrap();
        scene.obstacles[idx].material = Material::Frosted;
        let mut noise = ChaCha8Rng::seed_from_u64(7);
        let frosted = render_depth_scanline(&scene, &pose, &k, &cfg, &mut noise).unwrap();
        assert_eq!(opaque.samples(), frosted.samples());
    }
}

#[test]
fn glazing_an_obstacle_removes_it_from_depth_but_not_from_sound() {
    let k = guidance_core::geometry::CameraIntrinsics::default();
    let cfg = DepthSensorConfig::default();
    let engine = EngineConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..200 {
        let mut scene = random_scene(&mut rng);
        if scene.obstacles.is_empty() {
            continue;
        }
        let pose = random_pose(&mut rng);
        let idx = rng.random_range(0..scene.obstacles.len());
        scene.obstacles[idx].material = Material::Opaque;
        let heard_opaque = simulate_ultrasonic(&scene, &pose, &engine.ultrasonic);

        scene.obstacles[idx].material = Material::IrTransparent;
        let mut noise = ChaCha8Rng::seed_from_u64(7);
        let glazed = render_depth_scanline(&scene, &pose, &k, &cfg, &mut noise).unwrap();
        let heard_glazed = simulate_ultrasonic(&scene, &pose, &engine.ultrasonic);

        let removed = Scene {
            obstacles: {
                let mut rest = scene.obstacles.clone();
                rest.remove(idx);
                rest
            },
            ..scene.clone()
        };
        let mut noise = ChaCha8Rng::seed_from_u64(7);
        let absent = render_depth_scanline(&removed, &pose, &k, &cfg, &mut noise).unwrap();

        assert_eq!(glazed.samples(), absent.samples());
        assert_eq!(heard_opaque, heard_glazed);
    }
}

#[test]
fn obstacle_runs_are_bit_identical_across_reruns() {
    let scene = Scene {
        bounds: Rect::new(0.0, 0.0, 10.0, 5.0),
        obstacles: vec![
            Obstacle {
                footprint: Rect::new(2.0, 1.9, 2.4, 2.9),
                height: 0.8,
                material: Material::Opaque,
            },
            Obstacle {
                footprint: Rect::new(4.5, 2.4, 4.9, 3.6),
                height: 1.2,
                material: Material::IrTransparent,
            },
        ],
        start: Pose {
            position: Vec2::new(0.5, 2.5),
            ..Pose::default()
        },
        goal: Vec2::new(9.5, 2.5),
    };
    let engine = EngineConfig {
        seed: 99,
        ..EngineConfig::default()
    };
    let limits = Limits {
        max_steps: 400,
        max_sim_time_s: None,
    };
    let a = run_scenario(&scene, &engine, &limits).unwrap();
    let b = run_scenario(&scene, &engine, &limits).unwrap();
    assert_eq!(
        serde_json::to_vec(&a).unwrap(),
        serde_json::to_vec(&b).unwrap()
    );
    assert!(a.frames.iter().any(|f| f.decision.alpha_deg != Some(0.0)));
}
