## big flags

# extra logging
debug_mode = False

# randomness; every stream in a run is split from this one seed
default_seed = 0

# latent factor model
latent_dimension = 3  # K
regularization = 37.0  # lambda, shared by all four blocks
init_scale = 0.1  # std of the normal factor initialization

# block gradient descent
step_size = 1.0  # largest step any block tries
max_outer_iters = 500
inner_steps_per_block = 5
tolerance = 1e-5  # relative loss change over a full cycle
max_halvings = 40

# prediction
decision_threshold = 0.5

# synthetic protocol
synthetic_users = 200  # n1
synthetic_items = 800  # n2
synthetic_user_groups = 10  # m1
synthetic_item_groups = 10  # m2
observation_rate = 0.25  # pi
noise_sigma = 1.0
noise_mode = "threshold"  # or "bernoulli"

# self-expression (sparse subspace clustering)
ssc_alpha = 20.0  # mu = alpha / min_i max_{j != i} |x_i' x_j|
ssc_tolerance = 1e-6
ssc_max_iters = 500
affinity_top_q = 0  # 0 keeps every coefficient

# spectral clustering / k-means
kmeans_max_iters = 300

# cluster developing loop
cluster_count = 10  # requested user and item cluster counts
outer_epochs = 200
cdmc_inner_steps = 5
label_stability_ami = 0.999

# MovieLens
implicit_groups = 10
train_fraction = 0.95
genre_clusters = 6  # k of the genre k-means in projections
profile_clusters = 4  # k of the user-profile k-means in projections

# command line
default_output_dir = "runs/latest"
replications = 1
progress_every = 10  # log every n-th outer iteration at INFO
