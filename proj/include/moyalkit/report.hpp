#pragma once

#include <string>
#include <vector>

namespace moyalkit {

// Deterministic JSON emitter: insertion-ordered keys, floats printed with 17
// significant digits so reports round-trip bit-exactly and identical runs
// produce byte-identical files.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& name);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(long long v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(const char* v);
    JsonWriter& null();

    JsonWriter& field(const std::string& name, double v) { return key(name).value(v); }
    JsonWriter& field(const std::string& name, int v) { return key(name).value(v); }
    JsonWriter& field(const std::string& name, bool v) { return key(name).value(v); }
    JsonWriter& field(const std::string& name, const std::string& v) {
        return key(name).value(v);
    }
    JsonWriter& field(const std::string& name, const char* v) {
        return key(name).value(v);
    }

    std::string str() const { return out_; }

  private:
    void separator();
    std::string out_;
    std::vector<bool> needs_comma_;
    bool pending_key_ = false;
};

std::string format_double_17(double v);

void write_text_file(const std::string& path, const std::string& content);

} // namespace moyalkit
