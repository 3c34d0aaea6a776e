#include "fpoisson.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fpcore/engine.hpp"

struct fp_session {
  fp::Presentation pres;
};

struct fp_report {
  std::string json;
  std::string text;
  int exit_code = 0;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** err, const std::string& msg) {
  if (err) *err = dup_string(msg);
}

fp_session* open_text(const std::string& text, char** err) {
  try {
    auto* s = new fp_session{fp::parse_presentation(text)};
    return s;
  } catch (const fp::FpError& e) {
    set_err(err, e.what());
    return nullptr;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return nullptr;
  }
}

}  // namespace

extern "C" {

fp_session* fp_open_file(const char* path, char** err) {
  if (err) *err = nullptr;
  std::ifstream in(path);
  if (!in) {
    set_err(err, std::string("cannot open file: ") + (path ? path : "(null)"));
    return nullptr;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return open_text(buf.str(), err);
}

fp_session* fp_open_string(const char* text, char** err) {
  if (err) *err = nullptr;
  if (!text) {
    set_err(err, "null presentation text");
    return nullptr;
  }
  return open_text(text, err);
}

void fp_session_close(fp_session* s) { delete s; }

const char* fp_session_name(const fp_session* s) { return s->pres.name.c_str(); }

fp_report* fp_run(fp_session* s, const char* command, const char* options_json, int* status, char** err) {
  if (err) *err = nullptr;
  if (status) *status = FP_INTERNAL_ERROR;
  try {
    fp::RunConfig cfg;
    cfg.command = command ? command : "";
    if (options_json && *options_json) {
      nlohmann::json opts = nlohmann::json::parse(options_json);
      if (opts.contains("coeff")) cfg.coeff = opts["coeff"].get<std::string>();
      if (opts.contains("max_total_degree")) cfg.max_total_degree = opts["max_total_degree"].get<int>();
      if (opts.contains("field")) {
        std::string f = opts["field"].get<std::string>();
        if (f == "Q") {
          cfg.field_override = fp::FieldSpec::q();
        } else if (f.size() > 1 && f[0] == 'F') {
          cfg.field_override = fp::FieldSpec::gf(std::stoull(f.substr(1)));
        } else {
          throw fp::FpError(fp::errc::parse_error, "bad field '" + f + "' (want Q or F<p>)");
        }
      }
    }
    fp::Report rep = fp::run_command(s->pres, cfg);
    auto* out = new fp_report();
    out->json = rep.to_json().dump(2) + "\n";
    out->text = rep.to_text();
    out->exit_code = rep.exit_code();
    if (status) *status = out->exit_code;
    return out;
  } catch (const fp::FpError& e) {
    if (status) *status = static_cast<int>(e.code());
    set_err(err, e.what());
    return nullptr;
  } catch (const nlohmann::json::exception& e) {
    if (status) *status = FP_PARSE_ERROR;
    set_err(err, std::string("bad options json: ") + e.what());
    return nullptr;
  } catch (const std::exception& e) {
    if (status) *status = FP_INTERNAL_ERROR;
    set_err(err, e.what());
    return nullptr;
  }
}

const char* fp_report_json(const fp_report* r) { return r->json.c_str(); }
const char* fp_report_text(const fp_report* r) { return r->text.c_str(); }
int fp_report_exit_code(const fp_report* r) { return r->exit_code; }
void fp_report_free(fp_report* r) { delete r; }

void fp_string_free(char* s) { std::free(s); }

}  // extern "C"
