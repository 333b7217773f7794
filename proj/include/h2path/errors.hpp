#pragma once

#include <stdexcept>
#include <string>

namespace h2path {

// Bad input: files, parameters, presets, overrides. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure during a simulation run. Maps to CLI exit code 2.
class SimulationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public SimulationError
{
public:
    using SimulationError::SimulationError;
};

// Raised when a scenario produces no hydrogen, so cost per kg has no value.
class UndefinedLcohError : public SimulationError
{
public:
    using SimulationError::SimulationError;
};

} // namespace h2path
