#pragma once

#include <stdexcept>
#include <string>

namespace memcap {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration. Messages list every violated
/// invariant, one per line.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Membrane touched the bottom plate (y <= -1 + margin). The attractive
/// force diverges there, so the trajectory is aborted.
class CollapseError : public Error {
public:
    CollapseError(int device, double y, double tau = -1.0)
        : Error(format(device, y, tau)), device_(device), y_(y), tau_(tau) {}

    int device() const noexcept { return device_; }
    double y() const noexcept { return y_; }
    /// Dimensionless time of the abort, or -1 when outside an integration.
    double tau() const noexcept { return tau_; }

private:
    static std::string format(int device, double y, double tau);
    int device_;
    double y_;
    double tau_;
};

/// Non-finite state or other integration failure.
class SimulationError : public Error {
public:
    using Error::Error;
};

/// File input/output failure.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace memcap
