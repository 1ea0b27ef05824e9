// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

// Python bindings for the core library. Images cross the boundary as numpy arrays:
// RGB as float32 H×W×3, depth as float64 H×W, labels as uint16 H×W.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "scene4d/camera.hpp"
#include "scene4d/errors.hpp"
#include "scene4d/metrics.hpp"
#include "scene4d/pipeline.hpp"
#include "scene4d/splat.hpp"
#include "scene4d/synthscene.hpp"
#include "scene4d/train_support.hpp"
#include "scene4d/trajectory.hpp"

namespace py = pybind11;
using namespace scene4d;

namespace {

template <typename T>
Plane<T> to_plane(const py::array_t<T, py::array::c_style | py::array::forcecast>& a, int channels) {
  if (channels == 1 ? a.ndim() != 2 : (a.ndim() != 3 || a.shape(2) != channels))
    throw ValidationError("unexpected array shape");
  Plane<T> p(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), channels);
  std::memcpy(p.data.data(), a.data(), p.data.size() * sizeof(T));
  return p;
}

template <typename T>
py::array_t<T> from_plane(const Plane<T>& p) {
  std::vector<py::ssize_t> shape{p.height, p.width};
  if (p.channels > 1) shape.push_back(p.channels);
  py::array_t<T> out(shape);
  std::memcpy(out.mutable_data(), p.data.data(), p.data.size() * sizeof(T));
  return out;
}

FeatureGrid to_grid(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 4) throw ValidationError("feature grids are T x h x w x D arrays");
  FeatureGrid g(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)), static_cast<int>(a.shape(2)),
                static_cast<int>(a.shape(3)));
  std::memcpy(g.data.data(), a.data(), g.data.size() * sizeof(double));
  return g;
}

nlohmann::json py_to_json(const py::handle& obj) {
  return nlohmann::json::parse(py::str(py::module_::import("json").attr("dumps")(obj)).cast<std::string>());
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

RunConfig config_from(const py::object& cfg) {
  if (cfg.is_none()) return RunConfig{};
  return run_config_from_json(py_to_json(cfg));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "scene4d core bindings";
  m.attr("__version__") = kVersion;

  static py::exception<Error> base_exc(m, "Error", PyExc_RuntimeError);
  static py::exception<ValidationError> validation_exc(m, "ValidationError", PyExc_ValueError);
  static py::exception<IoError> io_exc(m, "IoError", PyExc_OSError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      py::set_error(validation_exc, e.what());
    } catch (const IoError& e) {
      py::set_error(io_exc, e.what());
    } catch (const Error& e) {
      py::set_error(base_exc, e.what());
    }
  });

  py::class_<Intrinsics>(m, "Intrinsics")
      .def(py::init<>())
      .def(py::init([](int w, int h, double fx, double fy, double cx, double cy) {
             return Intrinsics{w, h, fx, fy, cx, cy};
           }),
           py::arg("width"), py::arg("height"), py::arg("fx"), py::arg("fy"), py::arg("cx"), py::arg("cy"))
      .def_readwrite("width", &Intrinsics::width)
      .def_readwrite("height", &Intrinsics::height)
      .def_readwrite("fx", &Intrinsics::fx)
      .def_readwrite("fy", &Intrinsics::fy)
      .def_readwrite("cx", &Intrinsics::cx)
      .def_readwrite("cy", &Intrinsics::cy);

  py::class_<PoseDescription>(m, "PoseDescription")
      .def(py::init([](double az, double el, double r, const Vec3& look_at) {
             PoseDescription p;
             p.azimuth_deg = az;
             p.elevation_deg = el;
             p.radius_m = r;
             p.look_at = look_at;
             return p;
           }),
           py::arg("azimuth_deg"), py::arg("elevation_deg"), py::arg("radius_m"),
           py::arg("look_at") = default_look_at())
      .def_readwrite("azimuth_deg", &PoseDescription::azimuth_deg)
      .def_readwrite("elevation_deg", &PoseDescription::elevation_deg)
      .def_readwrite("radius_m", &PoseDescription::radius_m)
      .def_readwrite("look_at", &PoseDescription::look_at)
      .def("camera_center", &PoseDescription::camera_center)
      .def("__repr__", [](const PoseDescription& p) {
        return "PoseDescription(" + std::to_string(p.azimuth_deg) + ", " + std::to_string(p.elevation_deg) + ", " +
               std::to_string(p.radius_m) + ")";
      });

  m.def("intrinsics_from_fov", &intrinsics_from_fov, py::arg("width"), py::arg("height"),
        py::arg("horizontal_fov_deg"));
  m.def("pose_to_extrinsics", [](const PoseDescription& p) { return Mat4(pose_to_extrinsics(p).matrix()); });
  m.def("relative_extrinsics", [](const Mat4& src, const Mat4& dst) {
    return Mat4(relative_extrinsics(Extrinsics::from_matrix(src), Extrinsics::from_matrix(dst)).matrix());
  });
  m.def("interpolate_pose", &interpolate_pose, py::arg("p1"), py::arg("p2"), py::arg("alpha"));
  m.def("project", [](const Intrinsics& k, const Vec3& p) {
    const Projection r = project(k, p);
    return py::make_tuple(r.u, r.v, r.z);
  });
  m.def("unproject_pixel", &unproject_pixel, py::arg("k"), py::arg("u"), py::arg("v"), py::arg("depth"));
  m.def("motion_bucket",
        [](double d_az, double d_el, const std::string& preset) {
          const auto b = SamplingBounds::preset(preset);
          return motion_bucket(d_az, d_el, b.max_d_azimuth_deg, b.max_d_elevation_deg);
        },
        py::arg("d_azimuth_deg"), py::arg("d_elevation_deg"), py::arg("preset") = "max90");

  m.def("sample_pose_pair",
        [](std::uint64_t seed, const std::string& preset, std::optional<double> elevation) {
          Rng rng(seed);
          return sample_pose_pair(rng, SamplingBounds::preset(preset), elevation);
        },
        py::arg("seed"), py::arg("preset") = "max90", py::arg("source_elevation_deg") = py::none());
  m.def("build_trajectory",
        [](const PoseDescription& src, const PoseDescription& dst, const std::string& mode, int frames) {
          const TrajectoryMode tm = parse_trajectory_mode(mode);
          if (tm == TrajectoryMode::SineEased) throw ValidationError("sine-eased trajectories take Euclidean poses");
          const CameraTrajectory t = tm == TrajectoryMode::Direct ? build_direct(src, dst, frames)
                                                                  : build_gradual(src, dst, frames);
          std::vector<Mat4> out;
          for (const auto& e : t.extrinsics) out.push_back(e.matrix());
          return out;
        },
        py::arg("source"), py::arg("destination"), py::arg("mode") = "gradual", py::arg("frames") = kClipFrames);
  m.def("sine_ease_alpha", &sine_ease_alpha, py::arg("t"), py::arg("frames"));

  m.def("psnr",
        [](py::array_t<float> pred, py::array_t<float> gt) { return psnr(to_plane<float>(pred, 3), to_plane<float>(gt, 3)); },
        py::arg("pred"), py::arg("gt"));
  m.def("ssim",
        [](py::array_t<float> pred, py::array_t<float> gt) { return ssim(to_plane<float>(pred, 3), to_plane<float>(gt, 3)); },
        py::arg("pred"), py::arg("gt"));
  m.def("miou",
        [](py::array_t<std::uint16_t> pred, py::array_t<std::uint16_t> gt, std::vector<std::uint16_t> categories) {
          IouAccumulator acc;
          acc.add(to_plane<std::uint16_t>(pred, 1), to_plane<std::uint16_t>(gt, 1));
          return acc.mean_iou(categories);
        },
        py::arg("pred"), py::arg("gt"), py::arg("categories"));
  m.def("occlusion_mask",
        [](py::array_t<double> target_depth, const Intrinsics& k, const Mat4& target, const Mat4& source,
           py::array_t<double> source_depth) {
          return from_plane(compute_occlusion_mask(to_plane<double>(target_depth, 1),
                                                   Camera{k, Extrinsics::from_matrix(target)},
                                                   Camera{k, Extrinsics::from_matrix(source)},
                                                   to_plane<double>(source_depth, 1)));
        },
        py::arg("target_depth"), py::arg("intrinsics"), py::arg("target"), py::arg("source"),
        py::arg("source_depth"));

  m.def("render_points",
        [](const Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>& positions,
           const Eigen::Matrix<float, Eigen::Dynamic, 3, Eigen::RowMajor>& colors, const Intrinsics& k,
           const Mat4& extrinsics, int splat_radius) {
          if (positions.rows() != colors.rows()) throw ValidationError("positions/colors length mismatch");
          FusedPointCloud c;
          for (Eigen::Index i = 0; i < positions.rows(); ++i) {
            c.positions.emplace_back(positions.row(i).transpose());
            c.colors.push_back({colors(i, 0), colors(i, 1), colors(i, 2)});
            c.source_view.push_back(0);
          }
          RenderSettings s;
          s.splat_radius = splat_radius;
          const RenderedFrame f = render_points(c, Camera{k, Extrinsics::from_matrix(extrinsics)}, s);
          return py::make_tuple(from_plane(f.image), from_plane(f.depth), from_plane(f.coverage));
        },
        py::arg("positions"), py::arg("colors"), py::arg("intrinsics"), py::arg("extrinsics"),
        py::arg("splat_radius") = 1);

  m.def("focal_fraction", [](long iter) { return focal_fraction(iter, LossConfig{}); }, py::arg("iteration"));
  m.def("focal_l2",
        [](py::array_t<double> pred, py::array_t<double> target, double q) {
          return focal_l2(to_grid(pred), to_grid(target), q);
        },
        py::arg("pred"), py::arg("target"), py::arg("q"));
  m.def("fourier_encode",
        [](double d_az, double d_el, double d_r, const std::string& preset, int bands) {
          return fourier_encode(PoseDelta{d_az, d_el, d_r}, SamplingBounds::preset(preset), bands);
        },
        py::arg("d_azimuth_deg"), py::arg("d_elevation_deg"), py::arg("d_radius_m"), py::arg("preset") = "max90",
        py::arg("bands") = kDefaultFourierBands);

  m.def("ballistic_height", &ballistic_height, py::arg("z0"), py::arg("vz0"), py::arg("radius"),
        py::arg("gravity"), py::arg("restitution"), py::arg("tau"));

  m.def("synth", [](const std::filesystem::path& out, const py::object& cfg) {
    return json_to_py(cmd_synth(out, config_from(cfg)));
  }, py::arg("out"), py::arg("config") = py::none());
  m.def("fuse", [](const std::filesystem::path& scene, const py::object& cfg) {
    return json_to_py(cmd_fuse(scene, config_from(cfg)));
  }, py::arg("scene"), py::arg("config") = py::none());
  m.def("render",
        [](const std::filesystem::path& scene, const py::object& traj, const std::filesystem::path& out,
           const py::object& cfg) { return json_to_py(cmd_render(scene, trajectory_from_json(py_to_json(traj)), out, config_from(cfg))); },
        py::arg("scene"), py::arg("trajectory"), py::arg("out"), py::arg("config") = py::none());
  m.def("evaluate",
        [](const std::filesystem::path& pred, const std::filesystem::path& scene, const std::filesystem::path& report,
           const py::object& cfg) { return json_to_py(cmd_eval(pred, scene, std::nullopt, report, config_from(cfg))); },
        py::arg("pred"), py::arg("scene"), py::arg("report"), py::arg("config") = py::none());
}
