//! gRPC access to the wallet service. Messages travel as raw bytes so the
//! client hands back exactly what the node served.

use std::convert::Infallible;
use std::future::Future;
use std::pin::Pin;
use std::sync::Arc;
use std::task::{Context, Poll};
use std::time::Duration;

use async_trait::async_trait;
use bytes::{Buf, BufMut};
use prost::Message;
use tonic::codec::{Codec, DecodeBuf, Decoder, EncodeBuf, Encoder};
use tonic::codegen::http;
use tonic::server::{NamedService, UnaryService};
use tonic::transport::{Channel, Endpoint};
use tonic::{Code, Request, Response, Status};

use super::{BlockSource, RawBlockMessage, RawInfoMessage, SourceError};
use crate::proto::api::{EmptyMessage, NumberMessage};
use crate::proto::BlockExtention;

pub const SERVICE: &str = "protocol.Wallet";
pub const GET_BLOCK_BY_NUM: &str = "/protocol.Wallet/GetBlockByNum2";
pub const GET_INFO_BY_BLOCK_NUM: &str = "/protocol.Wallet/GetTransactionInfoByBlockNum";
pub const GET_NOW_BLOCK: &str = "/protocol.Wallet/GetNowBlock2";

const MAX_MESSAGE: usize = 256 * 1024 * 1024;

#[derive(Debug, Clone, Copy, Default)]
pub struct RawCodec;

#[derive(Debug, Clone, Copy, Default)]
pub struct RawEncoder;

#[derive(Debug, Clone, Copy, Default)]
pub struct RawDecoder;

impl Codec for RawCodec {
    type Encode = Vec<u8>;
    type Decode = Vec<u8>;
    type Encoder = RawEncoder;
    type Decoder = RawDecoder;

    fn encoder(&mut self) -> RawEncoder {
        RawEncoder
    }

    fn decoder(&mut self) -> RawDecoder {
        RawDecoder
    }
}

impl Encoder for RawEncoder {
    type Item = Vec<u8>;
    type Error = Status;

    fn encode(&mut self, item: Vec<u8>, dst: &mut EncodeBuf<'_>) -> Result<(), Status> {
        dst.put_slice(&item);
        Ok(())
    }
}

impl Decoder for RawDecoder {
    type Item = Vec<u8>;
    type Error = Status;

    fn decode(&mut self, src: &mut DecodeBuf<'_>) -> Result<Option<Vec<u8>>, Status> {
        let n = src.remaining();
        Ok(Some(src.copy_to_bytes(n).to_vec()))
    }
}

fn is_transport(code: Code) -> bool {
    matches!(
        code,
        Code::Unavailable
            | Code::DeadlineExceeded
            | Code::ResourceExhausted
            | Code::Aborted
            | Code::Cancelled
            | Code::Unknown
            | Code::Internal
    )
}

fn status_error(height: Option<u64>, status: Status) -> SourceError {
    match status.code() {
        Code::NotFound | Code::OutOfRange if height.is_some() => SourceError::NotFound {
            height: height.unwrap_or_default(),
        },
        code if is_transport(code) => SourceError::transport(height, status.message()),
        _ => SourceError::Rejected {
            height,
            message: status.to_string(),
        },
    }
}

/// Block source backed by a wallet gRPC endpoint.
#[derive(Debug, Clone)]
pub struct GrpcSource {
    endpoint: String,
    channel: Channel,
}

impl GrpcSource {
    /// Builds a lazily connecting source; connection failures surface as
    /// transport errors on the first call and are retried like any other.
    pub fn connect_lazy(endpoint: &str, timeout: Duration) -> Result<Self, SourceError> {
        let uri = if endpoint.contains("://") {
            endpoint.to_owned()
        } else {
            format!("http://{endpoint}")
        };
        let channel = Endpoint::from_shared(uri)
            .map_err(|e| SourceError::Rejected {
                height: None,
                message: format!("bad endpoint {endpoint:?}: {e}"),
            })?
            .timeout(timeout)
            .connect_timeout(timeout)
            .connect_lazy();
        Ok(GrpcSource {
            endpoint: endpoint.to_owned(),
            channel,
        })
    }

    async fn call(
        &self,
        path: &'static str,
        height: Option<u64>,
        body: Vec<u8>,
    ) -> Result<Vec<u8>, SourceError> {
        let mut grpc = tonic::client::Grpc::new(self.channel.clone())
            .max_decoding_message_size(MAX_MESSAGE)
            .max_encoding_message_size(MAX_MESSAGE);
        grpc.ready()
            .await
            .map_err(|e| SourceError::transport(height, e.to_string()))?;
        let path = http::uri::PathAndQuery::from_static(path);
        grpc.unary(Request::new(body), path, RawCodec)
            .await
            .map(Response::into_inner)
            .map_err(|s| status_error(height, s))
    }

    fn number(height: u64) -> Result<Vec<u8>, SourceError> {
        let num = i64::try_from(height).map_err(|_| SourceError::NotFound { height })?;
        Ok(NumberMessage { num }.encode_to_vec())
    }
}

#[async_trait]
impl BlockSource for GrpcSource {
    async fn fetch_block(&self, height: u64) -> Result<RawBlockMessage, SourceError> {
        let bytes = self
            .call(GET_BLOCK_BY_NUM, Some(height), Self::number(height)?)
            .await?;
        // Past the head the node answers with an empty block.
        let has_header = BlockExtention::decode(bytes.as_slice())
            .map(|b| b.block_header.is_some())
            .unwrap_or(true);
        if bytes.is_empty() || !has_header {
            return Err(SourceError::NotFound { height });
        }
        Ok(RawBlockMessage { height, bytes })
    }

    async fn fetch_info(&self, height: u64) -> Result<RawInfoMessage, SourceError> {
        let bytes = self
            .call(GET_INFO_BY_BLOCK_NUM, Some(height), Self::number(height)?)
            .await?;
        Ok(RawInfoMessage { height, bytes })
    }

    async fn head(&self) -> Result<u64, SourceError> {
        let bytes = self
            .call(GET_NOW_BLOCK, None, EmptyMessage {}.encode_to_vec())
            .await?;
        let block = BlockExtention::decode(bytes.as_slice()).map_err(|e| SourceError::Malformed {
            height: 0,
            reason: e.to_string(),
        })?;
        let number = block
            .block_header
            .and_then(|h| h.raw_data)
            .map(|r| r.number)
            .ok_or_else(|| SourceError::transport(None, "head block has no header"))?;
        u64::try_from(number).map_err(|_| SourceError::Malformed {
            height: 0,
            reason: format!("negative head {number}"),
        })
    }

    fn describe(&self) -> String {
        self.endpoint.clone()
    }
}

type BoxFuture<T> = Pin<Box<dyn Future<Output = T> + Send + 'static>>;

#[derive(Clone, Copy)]
enum Method {
    Block,
    Info,
    Head,
}

#[derive(Clone)]
struct Handler {
    source: Arc<dyn BlockSource>,
    method: Method,
}

fn server_status(err: SourceError) -> Status {
    match err {
        SourceError::Transport { message, .. } => Status::unavailable(message),
        other => Status::internal(other.to_string()),
    }
}

impl UnaryService<Vec<u8>> for Handler {
    type Response = Vec<u8>;
    type Future = BoxFuture<Result<Response<Vec<u8>>, Status>>;

    fn call(&mut self, request: Request<Vec<u8>>) -> Self::Future {
        let source = self.source.clone();
        let method = self.method;
        Box::pin(async move {
            let height = || -> Result<u64, Status> {
                let msg = NumberMessage::decode(request.get_ref().as_slice())
                    .map_err(|e| Status::invalid_argument(e.to_string()))?;
                u64::try_from(msg.num).map_err(|_| Status::invalid_argument("negative height"))
            };
            let bytes = match method {
                Method::Block => match source.fetch_block(height()?).await {
                    Ok(b) => b.bytes,
                    Err(SourceError::NotFound { .. }) => Vec::new(),
                    Err(e) => return Err(server_status(e)),
                },
                Method::Info => match source.fetch_info(height()?).await {
                    Ok(i) => i.bytes,
                    Err(SourceError::NotFound { .. }) => Vec::new(),
                    Err(e) => return Err(server_status(e)),
                },
                Method::Head => {
                    let head = source.head().await.map_err(server_status)?;
                    source.fetch_block(head).await.map_err(server_status)?.bytes
                }
            };
            Ok(Response::new(bytes))
        })
    }
}

/// Serves any [`BlockSource`] over the wallet gRPC methods the client
/// uses, answering like a node does past its head.
#[derive(Clone)]
pub struct WalletServer {
    source: Arc<dyn BlockSource>,
}

impl WalletServer {
    pub fn new(source: Arc<dyn BlockSource>) -> Self {
        WalletServer { source }
    }

    /// Serves on `listener` until `shutdown` resolves.
    pub async fn serve(
        self,
        listener: tokio::net::TcpListener,
        shutdown: impl Future<Output = ()> + Send,
    ) -> Result<(), tonic::transport::Error> {
        let incoming = tokio_stream::wrappers::TcpListenerStream::new(listener);
        tonic::transport::Server::builder()
            .add_service(self)
            .serve_with_incoming_shutdown(incoming, shutdown)
            .await
    }
}

impl NamedService for WalletServer {
    const NAME: &'static str = SERVICE;
}

impl<B> tower_service::Service<http::Request<B>> for WalletServer
where
    B: tonic::codegen::Body + Send + 'static,
    B::Error: Into<tonic::codegen::StdError> + Send + 'static,
{
    type Response = http::Response<tonic::body::Body>;
    type Error = Infallible;
    type Future = BoxFuture<Result<Self::Response, Infallible>>;

    fn poll_ready(&mut self, _cx: &mut Context<'_>) -> Poll<Result<(), Infallible>> {
        Poll::Ready(Ok(()))
    }

    fn call(&mut self, req: http::Request<B>) -> Self::Future {
        let method = match req.uri().path() {
            GET_BLOCK_BY_NUM => Method::Block,
            GET_INFO_BY_BLOCK_NUM => Method::Info,
            GET_NOW_BLOCK => Method::Head,
            _ => {
                return Box::pin(async { Ok(Status::unimplemented("").into_http()) });
            }
        };
        let handler = Handler {
            source: self.source.clone(),
            method,
        };
        Box::pin(async move {
            let mut grpc = tonic::server::Grpc::new(RawCodec)
                .max_decoding_message_size(MAX_MESSAGE)
                .max_encoding_message_size(MAX_MESSAGE);
            Ok(grpc.unary(handler, req).await)
        })
    }
}
