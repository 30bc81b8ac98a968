#pragma once

#include <string>

#include <zlib.h>

#include "tsc/util.hpp"

namespace tsc {

// Line reader over plain or gzip-compressed files. gzread handles both
// transparently, so one code path covers the ingest contract.
class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path) {
    f_ = gzopen(path.c_str(), "rb");
    if (!f_) throw Error("cannot open input file: " + path);
    gzbuffer(f_, 1 << 16);
  }
  ~LineReader() {
    if (f_) gzclose(f_);
  }
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  bool next(std::string& line) {
    line.clear();
    while (true) {
      for (; pos_ < len_; ++pos_) {
        char c = buf_[pos_];
        if (c == '\n') {
          ++pos_;
          if (!line.empty() && line.back() == '\r') line.pop_back();
          return true;
        }
        line.push_back(c);
      }
      int n = gzread(f_, buf_, sizeof(buf_));
      if (n < 0) throw Error("read error in " + path_);
      if (n == 0) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return !line.empty();
      }
      len_ = size_t(n);
      pos_ = 0;
    }
  }

 private:
  std::string path_;
  gzFile f_ = nullptr;
  char buf_[1 << 16];
  size_t pos_ = 0, len_ = 0;
};

}  // namespace tsc
