import logging

from event_system import EventBusSingleton
from event_system.events.Clustering import SelfExpressionFlaggedEvent, Side
from event_system.events.Data import ArtifactWrittenEvent, RatingsBinarizedEvent
from event_system.events.Training import OuterIterationEvent, TrainingFinishedEvent
from monitors import ManifestRecorder, ProgressMonitor


def test_manifest_recorder_accumulates_notes():
    recorder = ManifestRecorder().attach()

    EventBusSingleton.publish(RatingsBinarizedEvent(mean_rating=3.5, kept=10, dropped=0))
    EventBusSingleton.publish(SelfExpressionFlaggedEvent(side=Side.USER, columns=2, total=9))
    EventBusSingleton.publish(SelfExpressionFlaggedEvent(side=Side.USER, columns=1, total=9))
    EventBusSingleton.publish(TrainingFinishedEvent(converged=True))
    EventBusSingleton.publish(TrainingFinishedEvent(converged=False))
    EventBusSingleton.publish(ArtifactWrittenEvent(path="out/P.bin", kind="matrix"))
    recorder.detach()
    EventBusSingleton.publish(TrainingFinishedEvent(converged=True))

    assert recorder.notes["binarize_kept"] == 10
    assert recorder.notes["ssc_flagged_columns_user"] == 3
    assert recorder.notes["training_runs"] == 2
    assert recorder.notes["training_converged_runs"] == 1
    assert recorder.outputs == ["out/P.bin"]


def test_progress_monitor_logs_every_nth_iteration(caplog):
    monitor = ProgressMonitor(every=5).attach()

    with caplog.at_level(logging.INFO, logger="monitors.ProgressMonitor"):
        for iteration in range(1, 11):
            EventBusSingleton.publish(OuterIterationEvent(trainer="gs1mc", iteration=iteration))
    monitor.detach()

    assert [record.getMessage() for record in caplog.records] == [
        "OuterIterationEvent trainer=gs1mc iteration=5",
        "OuterIterationEvent trainer=gs1mc iteration=10",
    ]
