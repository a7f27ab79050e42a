from .DatasetSource import BundleSource as BundleSource
from .DatasetSource import Dataset as Dataset
from .DatasetSource import DatasetSource as DatasetSource
from .DatasetSource import GroundTruth as GroundTruth
from .DatasetSource import MovieLensSource as MovieLensSource
from .DatasetSource import open_source as open_source
from .DatasetSource import save_bundle as save_bundle
from .movielens import GENRES as GENRES
from .movielens import RatingRecord as RatingRecord
from .movielens import binarize_ratings as binarize_ratings
from .movielens import load_movielens as load_movielens
from .movielens import load_user_profiles as load_user_profiles
from .splits import group_by_implicit_feedback as group_by_implicit_feedback
from .splits import split_observed as split_observed
from .synthetic import SyntheticConfig as SyntheticConfig
from .synthetic import SyntheticDataset as SyntheticDataset
from .synthetic import generate_synthetic as generate_synthetic
