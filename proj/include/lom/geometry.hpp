#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lom {

/// Rigid transform in SE(3): rotation stored as a unit quaternion, translation
/// in meters. Rotation is renormalized on composition so long chains do not
/// drift.
struct RigidPose {
    Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    static RigidPose identity() { return {}; }

    Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation * p + translation; }

    RigidPose inverse() const {
        Eigen::Quaterniond qi = rotation.conjugate();
        return {qi, qi * (-translation)};
    }

    Eigen::Matrix3d rotation_matrix() const { return rotation.toRotationMatrix(); }
};

/// Applies b, then a.
RigidPose compose(const RigidPose& a, const RigidPose& b);

/// Rotation by `angle` about `axis` through the point `center` (as opposed to
/// the world origin).
RigidPose rotation_about_point(const Eigen::Vector3d& axis, double angle,
                               const Eigen::Vector3d& center);

/// Geodesic angle between the rotations of two poses, radians in [0, pi].
double rotation_angle_between(const RigidPose& a, const RigidPose& b);

/// Serializes as "qw qx qy qz tx ty tz" with max_digits10 precision.
std::string pose_to_line(const RigidPose& p);
RigidPose pose_from_line(const std::string& line);

/// Pinhole camera. `extrinsic` maps camera frame to world. Camera frame is the
/// usual computer-vision one: +x right, +y down, +z forward; depth is the z
/// coordinate in camera frame. Pixel (i, j) samples the continuous image plane
/// exactly at (i, j).
struct CameraModel {
    double fx = 0, fy = 0, cx = 0, cy = 0;
    int width = 0, height = 0;
    RigidPose extrinsic;

    bool intrinsics_valid() const {
        return fx > 0 && fy > 0 && cx >= 0 && cx < width && cy >= 0 && cy < height;
    }
};

/// Projects a world point. Throws BehindCameraError when z <= 0 in camera frame.
struct PixelDepth {
    double u, v, depth;
};
PixelDepth project(const CameraModel& camera, const Eigen::Vector3d& point_world);

/// World point for continuous pixel coordinates (u, v) at the given camera depth.
Eigen::Vector3d backproject(const CameraModel& camera, double u, double v, double depth);

/// Camera-to-world pose looking from eye toward target with +y mapped as close
/// to -up as the forward direction allows.
RigidPose make_lookat(const Eigen::Vector3d& eye, const Eigen::Vector3d& target,
                      const Eigen::Vector3d& up = Eigen::Vector3d::UnitZ());

struct PointCloud {
    std::vector<Eigen::Vector3d> points;
    std::vector<Eigen::Vector3d> normals;  // empty or same size as points
    std::vector<Eigen::Vector3d> colors;   // empty or same size as points, rgb in [0,1]

    bool has_normals() const { return !normals.empty(); }
    bool has_colors() const { return !colors.empty(); }
    size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }

    Eigen::Vector3d centroid() const;
};

struct TriangleMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<Eigen::Vector3i> triangles;

    bool empty() const { return triangles.empty(); }
    double surface_area() const;
    /// Drops zero-area triangles and out-of-range indices.
    void remove_degenerate_triangles(double min_area = 1e-14);
};

struct OrientedBoundingBox {
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
    Eigen::Vector3d half_extents = Eigen::Vector3d::Zero();

    double volume() const { return 8.0 * half_extents.prod(); }
    bool contains(const Eigen::Vector3d& p, double tol = 1e-6) const;
    std::array<Eigen::Vector3d, 8> corners() const;
    static OrientedBoundingBox axis_aligned(const Eigen::Vector3d& min_corner,
                                            const Eigen::Vector3d& max_corner);
};

/// Approximate minimum-volume OBB: PCA axes followed by per-axis rotation
/// refinement, with the axis-aligned box as a fallback candidate so the result
/// never exceeds the AABB volume. Degenerate inputs get half extents clamped
/// to 1 mm. Throws EmptyCloudError.
OrientedBoundingBox min_oriented_bbox(const PointCloud& cloud);

/// OBB with the given orientation that tightly contains the points.
OrientedBoundingBox obb_fit_with_rotation(const std::vector<Eigen::Vector3d>& points,
                                          const Eigen::Quaterniond& rotation,
                                          double min_half_extent);

/// Integer region of interest in pixel coordinates, inclusive bounds.
struct Roi2D {
    int x_min = 0, y_min = 0, x_max = -1, y_max = -1;

    bool empty() const { return x_max < x_min || y_max < y_min; }
    int width() const { return x_max - x_min + 1; }
    int height() const { return y_max - y_min + 1; }
    int64_t area() const { return empty() ? 0 : int64_t(width()) * height(); }
    bool contains(int x, int y) const {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }
    static Roi2D full_image(int width, int height) { return {0, 0, width - 1, height - 1}; }
};

// ---- file I/O -------------------------------------------------------------

/// ASCII PLY with positions and optional normals/colors.
void write_ply(const std::string& path, const PointCloud& cloud);
void write_ply(const std::string& path, const TriangleMesh& mesh);
PointCloud read_ply(const std::string& path);

/// Wavefront OBJ, mesh only.
void write_obj(const std::string& path, const TriangleMesh& mesh);
TriangleMesh read_obj(const std::string& path);

// ---- nearest neighbor -----------------------------------------------------

/// Small kd-tree over 3D points for nearest-neighbor queries.
class KdTree3 {
public:
    KdTree3() = default;
    explicit KdTree3(const std::vector<Eigen::Vector3d>& points);

    /// Index and squared distance of the nearest point; empty tree -> nullopt.
    std::optional<std::pair<int, double>> nearest(const Eigen::Vector3d& q) const;
    bool empty() const { return points_.empty(); }

private:
    struct Node {
        int left = -1, right = -1;
        int point = -1;
        int axis = 0;
    };
    int build(std::vector<int>& idx, int lo, int hi, int depth);
    void search(int node, const Eigen::Vector3d& q, int& best, double& best_d2) const;

    std::vector<Eigen::Vector3d> points_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace lom
