#pragma once
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "irsnet/params.hpp"

namespace irsnet {

// Shortest round-trip decimal form, '.' decimal point, locale-free.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view bytes);

// Hash of the canonical (key-sorted) JSON of both parameter structs, as 16
// hex digits. Stable across runs and platforms for equal parameters.
std::string param_hash(const system_params& p, const bound_params& bp);

// Build id baked in at configure time (git describe).
std::string build_id();

// CSV with a leading '#' metadata comment line, CRLF row endings, RFC 4180
// quoting. The comment line is not part of the RFC table; readers that
// reject it can skip the first line.
struct csv_table {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const csv_table& t);

// "param_hash=<hex> build=<id> kl_exponent=squared" — every experiment CSV
// carries this as its first comment.
std::string metadata_comment(const system_params& p, const bound_params& bp);

// Binary write; the rendered bytes land on disk unchanged on any platform.
void write_file(const std::string& path, std::string_view content);

// Minimal plot model for the built-in SVG 1.1 emitter. Points carry an
// optional symmetric error halfwidth (0 = no bar). On a log axis,
// nonpositive coordinates cannot be placed and those points are skipped.
struct svg_point {
  double x = 0.0;
  double y = 0.0;
  double yerr = 0.0;
};

struct svg_series {
  std::string label;
  std::string color = "#1f6fb2";
  bool dashed = false;
  std::vector<svg_point> pts;
};

struct svg_plot {
  std::string title, xlabel, ylabel;
  bool logx = false;
  bool logy = false;
  std::vector<svg_series> series;
};

std::string render_svg(const svg_plot& plot);

}  // namespace irsnet
