use std::future::Future;
use std::time::Duration;

use super::SourceError;

/// Exponential backoff applied to transport-class errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetryPolicy {
    pub initial_delay: Duration,
    pub factor: u32,
    /// Total attempts including the first one.
    pub max_attempts: u32,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            initial_delay: Duration::from_millis(200),
            factor: 2,
            max_attempts: 5,
        }
    }
}

impl RetryPolicy {
    pub fn with_budget(max_attempts: u32) -> Self {
        RetryPolicy {
            max_attempts,
            ..Self::default()
        }
    }

    pub fn with_initial_delay(mut self, delay: Duration) -> Self {
        self.initial_delay = delay;
        self
    }

    /// Delay before retry number `retry` (1-based).
    pub fn delay(&self, retry: u32) -> Duration {
        let mult = self.factor.saturating_pow(retry.saturating_sub(1));
        self.initial_delay.saturating_mul(mult)
    }

    /// Runs `op` until it succeeds, fails terminally or the budget is spent.
    /// Returns the value together with the number of retries it took.
    pub async fn run<T, F, Fut>(&self, mut op: F) -> Result<(T, u32), SourceError>
    where
        F: FnMut() -> Fut,
        Fut: Future<Output = Result<T, SourceError>>,
    {
        let budget = self.max_attempts.max(1);
        let mut attempt = 1;
        loop {
            match op().await {
                Ok(v) => return Ok((v, attempt - 1)),
                Err(err) if err.is_retryable() && attempt < budget => {
                    tracing::debug!(attempt, error = %err, "retrying");
                    tokio::time::sleep(self.delay(attempt)).await;
                    attempt += 1;
                }
                Err(SourceError::Transport {
                    height, message, ..
                }) => {
                    return Err(SourceError::Transport {
                        height,
                        message,
                        attempts: attempt,
                    });
                }
                Err(err) => return Err(err),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backoff_doubles() {
        let p = RetryPolicy::default();
        assert_eq!(p.delay(1), Duration::from_millis(200));
        assert_eq!(p.delay(2), Duration::from_millis(400));
        assert_eq!(p.delay(4), Duration::from_millis(1600));
    }

    #[tokio::test(start_paused = true)]
    async fn gives_up_after_budget() {
        let mut calls = 0;
        let err = RetryPolicy::default()
            .run(|| {
                calls += 1;
                async { Err::<(), _>(SourceError::transport(Some(3), "down")) }
            })
            .await
            .unwrap_err();
        assert_eq!(calls, 5);
        assert!(matches!(err, SourceError::Transport { attempts: 5, .. }));
    }

    #[tokio::test(start_paused = true)]
    async fn not_found_is_terminal() {
        let mut calls = 0;
        let err = RetryPolicy::default()
            .run(|| {
                calls += 1;
                async { Err::<(), _>(SourceError::NotFound { height: 9 }) }
            })
            .await
            .unwrap_err();
        assert_eq!(calls, 1);
        assert_eq!(err, SourceError::NotFound { height: 9 });
    }
}
