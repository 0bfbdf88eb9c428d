using System;
using ShopDemo.Business.Orders;
using ShopDemo.Data.Entities;
using ShopDemo.Web.Common;
using ShopDemo.Web.Services;

namespace ShopDemo.Web.Checkout
{
    public class CheckoutPage : PageBase
    {
        private OrderService orders;
        private PaymentGatewayProxy gateway;

        public void SubmitOrder()
        {
            // Collect the order from the form and hand it to the business layer.
            var order = new Order();
            OrderResult result = orders.PlaceOrder(order);
            gateway.Charge(order.Total);
            bool shown = result.Accepted;
        }
    }
}
