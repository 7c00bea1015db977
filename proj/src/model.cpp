#include "choice_attach/model.hpp"

namespace choice_attach {

std::string_view to_string(SamplingMode mode) {
  switch (mode) {
    case SamplingMode::WithReplacement:
      return "with-replacement";
    case SamplingMode::AllDistinct:
      return "without-replacement";
  }
  return "unknown";
}

SamplingMode parse_sampling_mode(std::string_view text) {
  if (text == "with-replacement") return SamplingMode::WithReplacement;
  if (text == "without-replacement" || text == "all-distinct")
    return SamplingMode::AllDistinct;
  throw ConfigError("unknown sampling mode '" + std::string(text) + "'");
}

void ModelParams::validate() const {
  if (s < 1 || r < s)
    throw ConfigError("need 1 <= s <= r, got r=" + std::to_string(r) +
                      " s=" + std::to_string(s));
  if (r > kMaxSampleCount)
    throw ConfigError("r=" + std::to_string(r) + " exceeds supported maximum " +
                      std::to_string(kMaxSampleCount));
}

ModelParams make_params(int r, int s, SamplingMode sampling) {
  ModelParams params{r, s, sampling};
  params.validate();
  return params;
}

}  // namespace choice_attach
