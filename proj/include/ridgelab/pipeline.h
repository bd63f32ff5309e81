// Filter pipeline grammar: stages joined by '|', each "name" or
// "name:params". Stages apply left to right.
//
//   gaussian:<sigma>   median:<radius>   histeq   visu[:<sigma>|auto]
//   gabor   wgc   pca[:<tau>|auto[,<passes>]]

#ifndef RIDGELAB_PIPELINE_H_
#define RIDGELAB_PIPELINE_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ridgelab/image.h"
#include "ridgelab/pca_denoiser.h"
#include "ridgelab/ridge.h"

namespace ridgelab {

// Values used when a stage omits its parameters.
struct PipelineDefaults {
  PcaConfig pca;
  GaborConfig gabor;
};

struct PipelineStage {
  std::string text;
  std::function<Image(const Image&)> apply;
};

class Pipeline {
 public:
  static Pipeline Parse(std::string_view spec,
                        const PipelineDefaults& defaults = {});

  Image Apply(const Image& image) const;
  const std::vector<PipelineStage>& stages() const { return stages_; }

 private:
  std::vector<PipelineStage> stages_;
};

}  // namespace ridgelab

#endif  // RIDGELAB_PIPELINE_H_
