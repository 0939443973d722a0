#pragma once

#include <stdexcept>
#include <string>

namespace lom {

/// Base class for all pipeline errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class EmptyCloudError : public Error {
public:
    explicit EmptyCloudError(const std::string& msg = "point cloud is empty") : Error(msg) {}
};

class BehindCameraError : public Error {
public:
    explicit BehindCameraError(const std::string& msg = "point is behind the camera") : Error(msg) {}
};

class NoSurfaceError : public Error {
public:
    explicit NoSurfaceError(const std::string& msg = "volume contains no observed zero crossing") : Error(msg) {}
};

class DimensionMismatchError : public Error {
public:
    explicit DimensionMismatchError(const std::string& msg = "image dimensions do not match") : Error(msg) {}
};

class AllZeroWeightsError : public Error {
public:
    explicit AllZeroWeightsError(const std::string& msg = "all particle weights are zero") : Error(msg) {}
};

class NoSegmentError : public Error {
public:
    explicit NoSegmentError(const std::string& msg = "no object segment above the support plane") : Error(msg) {}
};

class CropTooSmallError : public Error {
public:
    explicit CropTooSmallError(const std::string& msg = "crop smaller than 16x16 pixels") : Error(msg) {}
};

class ZeroVectorError : public Error {
public:
    explicit ZeroVectorError(const std::string& msg = "feature vector has zero norm") : Error(msg) {}
};

class NoCandidatesError : public Error {
public:
    explicit NoCandidatesError(const std::string& msg = "no grasp or suction candidates") : Error(msg) {}
};

class EmptyRegionError : public Error {
public:
    explicit EmptyRegionError(const std::string& msg = "projected region misses the image") : Error(msg) {}
};

class ZeroBaselineError : public Error {
public:
    explicit ZeroBaselineError(const std::string& msg = "single-view volume estimate is zero") : Error(msg) {}
};

class StorageFailureError : public Error {
public:
    explicit StorageFailureError(const std::string& msg = "durable write failed") : Error(msg) {}
};

class InsufficientObjectsError : public Error {
public:
    explicit InsufficientObjectsError(const std::string& msg = "ablation needs logs from at least two objects") : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace lom
