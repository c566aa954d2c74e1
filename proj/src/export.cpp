#include "graphstate/export.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

namespace gss {

namespace {

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const char* header) : path_(path) {
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw ExportError("cannot write " + path.string());
    buffer_ = header;
    buffer_ += '\n';
  }

  std::string& row() { return buffer_; }

  void flush_if_large() {
    if (buffer_.size() > (1u << 20)) flush();
  }

  void close() {
    flush();
    out_.close();
    if (!out_) throw ExportError("failed writing " + path_.string());
  }

 private:
  void flush() {
    out_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    buffer_.clear();
    if (!out_) throw ExportError("failed writing " + path_.string());
  }

  std::filesystem::path path_;
  std::ofstream out_;
  std::string buffer_;
};

void append_real(std::string& s, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  s.append(buf, ptr);
}

template <typename Int>
void append_int(std::string& s, Int v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  s.append(buf, ptr);
}

}  // namespace

std::string format_real(double v) {
  std::string s;
  append_real(s, v);
  return s;
}

void export_trajectory(const HybridArc& arc, const std::filesystem::path& dir,
                       const ExportOptions& opts) {
  if (arc.segments.empty()) throw ExportError("cannot export an empty arc");
  if (opts.stride == 0) throw ExportError("stride must be at least 1");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ExportError("cannot create " + dir.string() + ": " + ec.message());

  CsvFile vertices(dir / "vertices.csv", "t,k,label,attribute");
  CsvFile edges(dir / "edges.csv", "t,k,from,to,weight,adjacency");
  CsvFile dimension(dir / "dimension.csv", "t,k,basis_size");
  CsvFile jumps(dir / "jumps.csv", "tau,k,case");

  for (const Segment& seg : arc.segments) {
    const std::size_t n = seg.basis.size();
    const std::size_t last = seg.samples.size() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
      if (i % opts.stride != 0 && i != last) continue;
      const Sample& s = seg.samples[i];
      std::string prefix;
      append_real(prefix, s.t);
      prefix += ',';
      append_int(prefix, seg.k);
      prefix += ',';

      std::string& d = dimension.row();
      d += prefix;
      append_int(d, n);
      d += '\n';

      std::string& v = vertices.row();
      for (std::size_t p = 0; p < n; ++p) {
        v += prefix;
        append_int(v, seg.basis[p]);
        v += ',';
        append_real(v, s.x[p]);
        v += '\n';
      }

      std::string& e = edges.row();
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
          e += prefix;
          append_int(e, seg.basis[p]);
          e += ',';
          append_int(e, seg.basis[q]);
          e += ',';
          append_real(e, s.w[p * n + q]);
          e += seg.a.coeffs[p * n + q] ? ",1\n" : ",0\n";
        }
      }
      vertices.flush_if_large();
      edges.flush_if_large();
      dimension.flush_if_large();
    }
  }
  for (const JumpRecord& j : arc.jumps) {
    std::string& r = jumps.row();
    append_real(r, j.tau);
    r += ',';
    append_int(r, j.k);
    r += ',';
    r += to_string(j.kind);
    r += '\n';
  }
  vertices.close();
  edges.close();
  dimension.close();
  jumps.close();
}

}  // namespace gss
