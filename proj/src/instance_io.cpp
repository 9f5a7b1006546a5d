/* Copyright 2026 GenBench contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include <fstream>
#include <sstream>

#include "genbench/error.hpp"
#include "genbench/instance.hpp"
#include "readers.hpp"
#include "text_util.hpp"

namespace genbench {
namespace {

InstanceFormat sniff(std::string_view text)
{
  if (text.size() >= 2 && static_cast<unsigned char>(text[0]) == 0x1f && static_cast<unsigned char>(text[1]) == 0x8b)
    throw Error(ErrorCode::UnsupportedConstruct, "compressed input (gzip)");
  for (auto line : detail::split_lines(text)) {
    const auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '*') continue;
    if (trimmed.front() == '\\') return InstanceFormat::Lp;
    const auto tokens = detail::tokenize(trimmed);
    const std::string first = detail::upper(tokens[0].text);
    if (first == "NAME" || first == "ROWS" || first == "OBJSENSE" || first == "OBJSENCE" || first == "OBJNAME")
      return InstanceFormat::FreeMps;
    const std::string low = detail::lower(tokens[0].text);
    for (const char* kw : {"minimize", "minimise", "minimum", "min", "maximize", "maximise", "maximum", "max"}) {
      if (low == kw || detail::starts_with(low, std::string(kw) + ":")) return InstanceFormat::Lp;
    }
    break;
  }
  throw ParseError(ErrorCode::MalformedFile, "unrecognized instance format", 1, 1);
}

}  // namespace

MilpInstance parse_instance_text(std::string_view text, InstanceFormat format, std::string_view source_name)
{
  if (format == InstanceFormat::Auto) format = sniff(text);
  MilpInstance inst = format == InstanceFormat::Lp ? detail::read_lp(text) : detail::read_free_mps(text);
  if (inst.name.empty()) inst.name = std::string(source_name);
  inst = canonicalize(std::move(inst));
  try {
    validate(inst);
  } catch (const Error& e) {
    throw ParseError(ErrorCode::MalformedFile, e.what(), 0, 0);
  }
  return inst;
}

MilpInstance parse_instance_file(const std::filesystem::path& path, InstanceFormat format)
{
  const std::string ext = detail::lower(path.extension().string());
  if (ext == ".gz" || ext == ".bz2" || ext == ".xz" || ext == ".zip" || ext == ".zst")
    throw Error(ErrorCode::UnsupportedConstruct, "compressed archive '" + path.filename().string() + "'");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (format == InstanceFormat::Auto) {
    if (ext == ".mps") {
      format = InstanceFormat::FreeMps;
    } else if (ext == ".lp") {
      format = InstanceFormat::Lp;
    }
  }
  MilpInstance inst = parse_instance_text(buf.str(), format, path.stem().string());
  // The file name is the stable identifier across the toolkit.
  inst.name = path.stem().string();
  return inst;
}

}  // namespace genbench
