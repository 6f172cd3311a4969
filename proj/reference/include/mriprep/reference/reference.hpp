#pragma once

#include <vector>

#include "mriprep/image.hpp"
#include "mriprep/preprocess.hpp"

// Single-threaded brute-force counterparts of the parallel kernels. Each one is
// written directly from the definition, without sharing code with src/.
namespace mriprep::reference {

GrayImage median_filter(const GrayImage& img, int k);
GrayImage erode(const GrayImage& img, int side);
GrayImage dilate(const GrayImage& img, int side);
GrayImage opening(const GrayImage& img, int side);

/// Tile histograms gathered pixel by pixel, clipped and equalized.
std::vector<ToneMapping> clahe_tile_mappings(const GrayImage& img, int tiles_x, int tiles_y, double clip);
GrayImage clahe(const GrayImage& img, int tiles_x, int tiles_y, double clip);

GrayImage resize_bilinear(const GrayImage& img, int width, int height);

double mse(const GrayImage& a, const GrayImage& b);
/// Direct summation over every 11x11 window with 2-D Gaussian weights.
double ssim(const GrayImage& a, const GrayImage& b);

}  // namespace mriprep::reference
