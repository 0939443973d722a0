#include "lom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "lom/errors.hpp"

namespace lom {

RigidPose compose(const RigidPose& a, const RigidPose& b) {
    Eigen::Quaterniond q = a.rotation * b.rotation;
    q.normalize();
    return {q, a.rotation * b.translation + a.translation};
}

RigidPose rotation_about_point(const Eigen::Vector3d& axis, double angle,
                               const Eigen::Vector3d& center) {
    Eigen::Quaterniond q(Eigen::AngleAxisd(angle, axis.normalized()));
    return {q, center - q * center};
}

double rotation_angle_between(const RigidPose& a, const RigidPose& b) {
    double d = std::abs(a.rotation.normalized().dot(b.rotation.normalized()));
    d = std::min(d, 1.0);
    return 2.0 * std::acos(d);
}

std::string pose_to_line(const RigidPose& p) {
    std::ostringstream os;
    os.precision(std::numeric_limits<double>::max_digits10);
    os << p.rotation.w() << ' ' << p.rotation.x() << ' ' << p.rotation.y() << ' '
       << p.rotation.z() << ' ' << p.translation.x() << ' ' << p.translation.y() << ' '
       << p.translation.z();
    return os.str();
}

RigidPose pose_from_line(const std::string& line) {
    std::istringstream is(line);
    double qw, qx, qy, qz, tx, ty, tz;
    if (!(is >> qw >> qx >> qy >> qz >> tx >> ty >> tz))
        throw IoError("pose line must contain 7 numbers: '" + line + "'");
    RigidPose p{Eigen::Quaterniond(qw, qx, qy, qz), Eigen::Vector3d(tx, ty, tz)};
    if (p.rotation.norm() < 1e-12) throw IoError("pose line has zero quaternion");
    p.rotation.normalize();
    return p;
}

PixelDepth project(const CameraModel& camera, const Eigen::Vector3d& point_world) {
    Eigen::Vector3d pc = camera.extrinsic.inverse().apply(point_world);
    if (pc.z() <= 0.0) throw BehindCameraError();
    return {camera.fx * pc.x() / pc.z() + camera.cx, camera.fy * pc.y() / pc.z() + camera.cy,
            pc.z()};
}

Eigen::Vector3d backproject(const CameraModel& camera, double u, double v, double depth) {
    Eigen::Vector3d pc((u - camera.cx) / camera.fx * depth, (v - camera.cy) / camera.fy * depth,
                       depth);
    return camera.extrinsic.apply(pc);
}

RigidPose make_lookat(const Eigen::Vector3d& eye, const Eigen::Vector3d& target,
                      const Eigen::Vector3d& up) {
    Eigen::Vector3d z = (target - eye).normalized();
    Eigen::Vector3d x = z.cross(up);
    if (x.norm() < 1e-9) x = z.cross(Eigen::Vector3d::UnitY());
    x.normalize();
    Eigen::Vector3d y = z.cross(x);
    Eigen::Matrix3d r;
    r.col(0) = x;
    r.col(1) = y;
    r.col(2) = z;
    return {Eigen::Quaterniond(r), eye};
}

Eigen::Vector3d PointCloud::centroid() const {
    if (points.empty()) throw EmptyCloudError();
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (const auto& p : points) c += p;
    return c / static_cast<double>(points.size());
}

double TriangleMesh::surface_area() const {
    double area = 0;
    for (const auto& t : triangles) {
        const Eigen::Vector3d& a = vertices[t[0]];
        area += 0.5 * (vertices[t[1]] - a).cross(vertices[t[2]] - a).norm();
    }
    return area;
}

void TriangleMesh::remove_degenerate_triangles(double min_area) {
    std::vector<Eigen::Vector3i> kept;
    kept.reserve(triangles.size());
    const int n = static_cast<int>(vertices.size());
    for (const auto& t : triangles) {
        if (t[0] < 0 || t[1] < 0 || t[2] < 0 || t[0] >= n || t[1] >= n || t[2] >= n) continue;
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) continue;
        const Eigen::Vector3d& a = vertices[t[0]];
        double area = 0.5 * (vertices[t[1]] - a).cross(vertices[t[2]] - a).norm();
        if (area > min_area) kept.push_back(t);
    }
    triangles.swap(kept);
}

bool OrientedBoundingBox::contains(const Eigen::Vector3d& p, double tol) const {
    Eigen::Vector3d local = rotation.conjugate() * (p - center);
    return (local.array().abs() <= half_extents.array() + tol).all();
}

std::array<Eigen::Vector3d, 8> OrientedBoundingBox::corners() const {
    std::array<Eigen::Vector3d, 8> out;
    int k = 0;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1})
                out[k++] = center + rotation * Eigen::Vector3d(sx * half_extents.x(),
                                                               sy * half_extents.y(),
                                                               sz * half_extents.z());
    return out;
}

OrientedBoundingBox OrientedBoundingBox::axis_aligned(const Eigen::Vector3d& min_corner,
                                                      const Eigen::Vector3d& max_corner) {
    OrientedBoundingBox b;
    b.center = 0.5 * (min_corner + max_corner);
    b.half_extents = 0.5 * (max_corner - min_corner);
    return b;
}

OrientedBoundingBox obb_fit_with_rotation(const std::vector<Eigen::Vector3d>& points,
                                          const Eigen::Quaterniond& rotation,
                                          double min_half_extent) {
    Eigen::Matrix3d rt = rotation.conjugate().toRotationMatrix();
    Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::max());
    Eigen::Vector3d hi = -lo;
    for (const auto& p : points) {
        Eigen::Vector3d q = rt * p;
        lo = lo.cwiseMin(q);
        hi = hi.cwiseMax(q);
    }
    OrientedBoundingBox box;
    box.rotation = rotation.normalized();
    box.half_extents = (0.5 * (hi - lo)).cwiseMax(min_half_extent);
    box.center = box.rotation * (0.5 * (hi + lo));
    return box;
}

namespace {

constexpr double kMinHalfExtent = 1e-3;  // 1 mm floor for degenerate clouds

double fitted_volume(const std::vector<Eigen::Vector3d>& pts, const Eigen::Quaterniond& q) {
    Eigen::Matrix3d rt = q.conjugate().toRotationMatrix();
    Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::max());
    Eigen::Vector3d hi = -lo;
    for (const auto& p : pts) {
        Eigen::Vector3d v = rt * p;
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    Eigen::Vector3d ext = (0.5 * (hi - lo)).cwiseMax(kMinHalfExtent);
    return 8.0 * ext.prod();
}

}  // namespace

OrientedBoundingBox min_oriented_bbox(const PointCloud& cloud) {
    if (cloud.empty()) throw EmptyCloudError();
    const auto& pts = cloud.points;

    if (pts.size() == 1) {
        OrientedBoundingBox box;
        box.center = pts[0];
        box.half_extents = Eigen::Vector3d::Constant(kMinHalfExtent);
        return box;
    }

    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& p : pts) mean += p;
    mean /= static_cast<double>(pts.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const auto& p : pts) {
        Eigen::Vector3d d = p - mean;
        cov += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    Eigen::Matrix3d axes = eig.eigenvectors();
    if (axes.determinant() < 0) axes.col(0) = -axes.col(0);

    Eigen::Quaterniond best(axes);
    best.normalize();
    double best_vol = fitted_volume(pts, best);

    // The identity candidate guarantees volume <= AABB volume.
    if (fitted_volume(pts, Eigen::Quaterniond::Identity()) < best_vol) {
        best = Eigen::Quaterniond::Identity();
        best_vol = fitted_volume(pts, best);
    }

    // Coordinate-descent rotation refinement around the current frame.
    const Eigen::Vector3d axis_set[3] = {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(),
                                         Eigen::Vector3d::UnitZ()};
    double span = M_PI / 4.0;
    for (int pass = 0; pass < 4; ++pass) {
        for (const auto& axis : axis_set) {
            double best_angle = 0.0;
            for (int k = -8; k <= 8; ++k) {
                if (k == 0) continue;
                double angle = span * k / 8.0;
                Eigen::Quaterniond cand = best * Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis));
                double vol = fitted_volume(pts, cand);
                if (vol < best_vol - 1e-15) {
                    best_vol = vol;
                    best_angle = angle;
                }
            }
            if (best_angle != 0.0)
                best = best * Eigen::Quaterniond(Eigen::AngleAxisd(best_angle, axis));
        }
        span *= 0.35;
    }

    return obb_fit_with_rotation(pts, best, kMinHalfExtent);
}

// ---- PLY / OBJ ------------------------------------------------------------

void write_ply(const std::string& path, const PointCloud& cloud) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << "ply\nformat ascii 1.0\nelement vertex " << cloud.size() << "\n";
    f << "property float x\nproperty float y\nproperty float z\n";
    if (cloud.has_normals()) f << "property float nx\nproperty float ny\nproperty float nz\n";
    if (cloud.has_colors()) f << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    f << "end_header\n";
    f.precision(9);
    for (size_t i = 0; i < cloud.size(); ++i) {
        const auto& p = cloud.points[i];
        f << p.x() << ' ' << p.y() << ' ' << p.z();
        if (cloud.has_normals()) {
            const auto& n = cloud.normals[i];
            f << ' ' << n.x() << ' ' << n.y() << ' ' << n.z();
        }
        if (cloud.has_colors()) {
            const auto& c = cloud.colors[i];
            for (int k = 0; k < 3; ++k)
                f << ' ' << std::clamp(static_cast<int>(std::lround(c[k] * 255.0)), 0, 255);
        }
        f << '\n';
    }
    if (!f) throw IoError("write failed: " + path);
}

void write_ply(const std::string& path, const TriangleMesh& mesh) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << "ply\nformat ascii 1.0\nelement vertex " << mesh.vertices.size() << "\n";
    f << "property float x\nproperty float y\nproperty float z\n";
    f << "element face " << mesh.triangles.size() << "\n";
    f << "property list uchar int vertex_indices\nend_header\n";
    f.precision(9);
    for (const auto& v : mesh.vertices) f << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    for (const auto& t : mesh.triangles) f << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    if (!f) throw IoError("write failed: " + path);
}

PointCloud read_ply(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    std::string line;
    std::getline(f, line);
    if (line != "ply") throw IoError(path + ": not an ascii ply file");
    size_t n_vertex = 0;
    std::vector<std::string> props;
    bool in_vertex = false;
    while (std::getline(f, line)) {
        std::istringstream is(line);
        std::string tok;
        is >> tok;
        if (tok == "end_header") break;
        if (tok == "format") {
            std::string fmt;
            is >> fmt;
            if (fmt != "ascii") throw IoError(path + ": only ascii ply supported");
        } else if (tok == "element") {
            std::string what;
            size_t count;
            is >> what >> count;
            in_vertex = (what == "vertex");
            if (in_vertex) n_vertex = count;
        } else if (tok == "property" && in_vertex) {
            std::string type, name;
            is >> type;
            if (type == "list") continue;
            is >> name;
            props.push_back(name);
        }
    }
    auto index_of = [&](const std::string& name) {
        auto it = std::find(props.begin(), props.end(), name);
        return it == props.end() ? -1 : static_cast<int>(it - props.begin());
    };
    int ix = index_of("x"), iy = index_of("y"), iz = index_of("z");
    int inx = index_of("nx"), iny = index_of("ny"), inz = index_of("nz");
    int ir = index_of("red"), ig = index_of("green"), ib = index_of("blue");
    if (ix < 0 || iy < 0 || iz < 0) throw IoError(path + ": missing x/y/z properties");

    PointCloud cloud;
    cloud.points.reserve(n_vertex);
    std::vector<double> row(props.size());
    for (size_t i = 0; i < n_vertex; ++i) {
        for (size_t k = 0; k < props.size(); ++k)
            if (!(f >> row[k])) throw IoError(path + ": truncated vertex data");
        cloud.points.emplace_back(row[ix], row[iy], row[iz]);
        if (inx >= 0) cloud.normals.emplace_back(row[inx], row[iny], row[inz]);
        if (ir >= 0) cloud.colors.emplace_back(row[ir] / 255.0, row[ig] / 255.0, row[ib] / 255.0);
    }
    return cloud;
}

void write_obj(const std::string& path, const TriangleMesh& mesh) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.precision(9);
    for (const auto& v : mesh.vertices) f << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    for (const auto& t : mesh.triangles)
        f << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    if (!f) throw IoError("write failed: " + path);
}

TriangleMesh read_obj(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    TriangleMesh mesh;
    std::string line;
    while (std::getline(f, line)) {
        std::istringstream is(line);
        std::string tok;
        is >> tok;
        if (tok == "v") {
            double x, y, z;
            is >> x >> y >> z;
            mesh.vertices.emplace_back(x, y, z);
        } else if (tok == "f") {
            std::vector<int> idx;
            std::string v;
            while (is >> v) idx.push_back(std::stoi(v.substr(0, v.find('/'))) - 1);
            for (size_t k = 2; k < idx.size(); ++k)
                mesh.triangles.emplace_back(idx[0], idx[k - 1], idx[k]);
        }
    }
    return mesh;
}

// ---- KdTree3 ----------------------------------------------------------------

KdTree3::KdTree3(const std::vector<Eigen::Vector3d>& points) : points_(points) {
    if (points_.empty()) return;
    std::vector<int> idx(points_.size());
    std::iota(idx.begin(), idx.end(), 0);
    nodes_.reserve(points_.size());
    root_ = build(idx, 0, static_cast<int>(idx.size()), 0);
}

int KdTree3::build(std::vector<int>& idx, int lo, int hi, int depth) {
    if (lo >= hi) return -1;
    int axis = depth % 3;
    int mid = (lo + hi) / 2;
    std::nth_element(idx.begin() + lo, idx.begin() + mid, idx.begin() + hi,
                     [&](int a, int b) { return points_[a][axis] < points_[b][axis]; });
    Node node;
    node.point = idx[mid];
    node.axis = axis;
    int self = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    nodes_[self].left = build(idx, lo, mid, depth + 1);
    nodes_[self].right = build(idx, mid + 1, hi, depth + 1);
    return self;
}

void KdTree3::search(int node, const Eigen::Vector3d& q, int& best, double& best_d2) const {
    if (node < 0) return;
    const Node& n = nodes_[node];
    double d2 = (points_[n.point] - q).squaredNorm();
    if (d2 < best_d2) {
        best_d2 = d2;
        best = n.point;
    }
    double delta = q[n.axis] - points_[n.point][n.axis];
    int near = delta < 0 ? n.left : n.right;
    int far = delta < 0 ? n.right : n.left;
    search(near, q, best, best_d2);
    if (delta * delta < best_d2) search(far, q, best, best_d2);
}

std::optional<std::pair<int, double>> KdTree3::nearest(const Eigen::Vector3d& q) const {
    if (root_ < 0) return std::nullopt;
    int best = -1;
    double best_d2 = std::numeric_limits<double>::max();
    search(root_, q, best, best_d2);
    return std::make_pair(best, best_d2);
}

}  // namespace lom
