#include "emin/io.hpp"

#include "emin/errors.hpp"
#include "emin/experiments.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace emin::io {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix &m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json &j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data"))
    throw ParseError("matrix JSON needs \"rows\", \"cols\" and \"data\"");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw ParseError("\"rows\" and \"cols\" must be integers");
  const long long rows = j["rows"].get<long long>();
  const long long cols = j["cols"].get<long long>();
  if (rows < 1 || cols < 1)
    throw ParseError("matrix dimensions must be positive");
  const json &data = j["data"];
  if (!data.is_array() ||
      static_cast<long long>(data.size()) != rows * cols)
    throw ParseError("\"data\" must hold rows*cols = " +
                     std::to_string(rows * cols) + " entries");
  ComplexMatrix m(rows, cols);
  for (long long k = 0; k < rows * cols; ++k) {
    const json &e = data[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number())
      throw ParseError("entry " + std::to_string(k) +
                       " must be a [re, im] pair of numbers");
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw ParseError("entry " + std::to_string(k) + " is not finite");
    m(k / cols, k % cols) = cplx(re, im);
  }
  return m;
}

std::string matrix_to_string(const ComplexMatrix &m) {
  return matrix_to_json(m).dump();
}

ComplexMatrix parse_matrix(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    // e.byte is 1-based and points just past the failing character.
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k < std::min(offset, text.size()); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("JSON parse error at line " + std::to_string(line) +
                     ", column " + std::to_string(column) + " (offset " +
                     std::to_string(offset) + "): " + e.what());
  }
  return matrix_from_json(j);
}

void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out)
    throw Error("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_matrix(const std::filesystem::path &path, const ComplexMatrix &m) {
  write_text(path, matrix_to_json(m).dump(2) + "\n");
}

ComplexMatrix read_matrix(const std::filesystem::path &path) {
  try {
    return parse_matrix(read_text(path));
  } catch (const ParseError &e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_double(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

std::string records_to_csv(const std::vector<ExperimentRecord> &records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const ExperimentRecord &r : records) {
    out += format_double(r.g);
    out += ',';
    out += std::to_string(r.sample_index);
    for (double v : {r.n_geo, r.n_xi, r.e_before, r.e_after, r.ep_before,
                     r.ep_after}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string sha256_hex(const std::string &bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
    throw Error("SHA-256 computation failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[digest[k] >> 4];
    out += hex[digest[k] & 0xf];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path &path) {
  return sha256_hex(read_text(path));
}

json manifest_to_json(const RunManifest &manifest) {
  json files = json::array();
  for (const auto &f : manifest.files) {
    files.push_back({{"path", f.filename().string()},
                     {"sha256", sha256_file(f)},
                     {"bytes", std::filesystem::file_size(f)}});
  }
  json out = {{"command_line", manifest.command_line},
              {"master_seed", manifest.master_seed},
              {"parameters", manifest.parameters},
              {"version", manifest.version},
              {"files", std::move(files)},
              {"wall_clock_seconds", manifest.wall_clock_seconds}};
  for (const auto &[key, value] : manifest.extra.items())
    out[key] = value;
  return out;
}

void write_manifest(const std::filesystem::path &path,
                    const RunManifest &manifest) {
  write_text(path, manifest_to_json(manifest).dump(2) + "\n");
}

// ------------------------------------------------------------------- SVG

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 440;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 55;

constexpr std::array<const char *, 6> kColors = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '&': out += "&amp;"; break;
    default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2f", v);
  return buf.data();
}

std::string tick(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.3g", v);
  return buf.data();
}

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const {
    return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

Frame fit_frame(const std::vector<Series> &series) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const Series &s : series) {
    for (double x : s.x) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
    }
    for (double y : s.y) {
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!std::isfinite(x0)) {
    x0 = 0;
    x1 = 1;
    y0 = 0;
    y1 = 1;
  }
  if (x1 - x0 <= 0) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 - y0 <= 0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double padx = 0.04 * (x1 - x0);
  const double pady = 0.06 * (y1 - y0);
  return {x0 - padx, x1 + padx, y0 - pady, y1 + pady};
}

std::string frame_svg(const Frame &f, const std::vector<Series> &series,
                      const std::string &title, const std::string &x_label,
                      const std::string &y_label) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << escape(title) << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
      << kWidth - kLeft - kRight << "\" height=\"" << kHeight - kTop - kBottom
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = f.x0 + (f.x1 - f.x0) * k / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * k / 4.0;
    out << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << kHeight - kBottom + 16
        << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(f.py(yv) + 4)
        << "\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
  }
  if (f.y0 < 0 && f.y1 > 0)
    out << "<line x1=\"" << kLeft << "\" x2=\"" << kWidth - kRight
        << "\" y1=\"" << num(f.py(0)) << "\" y2=\"" << num(f.py(0))
        << "\" stroke=\"#999\" stroke-dasharray=\"4,3\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  out << "<text transform=\"translate(16," << kHeight / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label)
      << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (series[s].label.empty())
      continue;
    out << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 16 + 16 * s
        << "\" fill=\"" << kColors[s % kColors.size()] << "\">"
        << escape(series[s].label) << "</text>\n";
  }
  return out.str();
}

} // namespace

std::string scatter_svg(const std::vector<Series> &series,
                        const std::string &title, const std::string &x_label,
                        const std::string &y_label) {
  const Frame f = fit_frame(series);
  std::string out = frame_svg(f, series, title, x_label, y_label);
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char *color = kColors[s % kColors.size()];
    for (std::size_t k = 0; k < std::min(series[s].x.size(), series[s].y.size());
         ++k)
      out += "<circle cx=\"" + num(f.px(series[s].x[k])) + "\" cy=\"" +
             num(f.py(series[s].y[k])) + "\" r=\"1.6\" fill=\"" + color +
             "\" fill-opacity=\"0.5\"/>\n";
  }
  return out + "</svg>\n";
}

std::string line_svg(const std::vector<Series> &series, const std::string &title,
                     const std::string &x_label, const std::string &y_label) {
  const Frame f = fit_frame(series);
  std::string out = frame_svg(f, series, title, x_label, y_label);
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char *color = kColors[s % kColors.size()];
    std::string points;
    for (std::size_t k = 0; k < std::min(series[s].x.size(), series[s].y.size());
         ++k) {
      points += num(f.px(series[s].x[k])) + "," + num(f.py(series[s].y[k])) + " ";
      out += "<circle cx=\"" + num(f.px(series[s].x[k])) + "\" cy=\"" +
             num(f.py(series[s].y[k])) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
  }
  return out + "</svg>\n";
}

} // namespace emin::io
