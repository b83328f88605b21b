from cslb.data.Dataset import Dataset
from cslb.data.idx import parse_idx_images, parse_idx_labels, load_idx_dataset
from cslb.data.synthetic import synth_blobs, subsample, subsample_indices, train_test_split
