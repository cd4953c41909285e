#pragma once

#include <filesystem>
#include <string>

#include "assouad/metric_space.hpp"

namespace assouad::io {

// Distance-matrix files come in two flavours:
//
//   structured   {"labels": ["a", "b"], "d": [[0, 1], [1, 0]]}
//   flat         first line is n, then n comma-separated rows of n numbers
//
// Readers detect the flavour from the first non-blank character. Writers
// emit 17 significant digits so that a write/read cycle is exact.

enum class MatrixFormat { structured, flat };

FiniteMetricSpace parse_metric(const std::string& text, double tol = kDefaultTolMetric);
FiniteMetricSpace read_metric(const std::filesystem::path& path, double tol = kDefaultTolMetric);

std::string format_metric(const FiniteMetricSpace& x, MatrixFormat format = MatrixFormat::structured);
void write_metric(const std::filesystem::path& path, const FiniteMetricSpace& x,
                  MatrixFormat format = MatrixFormat::structured);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace assouad::io
